"""Narrative alignment between the unit sequences of two adaptations.

A similarity matrix over narrative units (textual, structural, or a hybrid
of both) is turned into a binary many-to-many alignment either by simple
thresholding or by an adapted Smith-Waterman local aligner in which gap moves
also emit their landing cell as a match. Alignments are scored against gold
standards with precision/recall/F1, and hyperparameters are tuned on
held-out media pairs.
"""

from __future__ import annotations

import csv
import re
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .networks import DynamicNetwork

VERTICES = "vertices"
EDGES = "edges"
JACCARD = "jaccard"
RUZICKA_INVERSE = "ruzicka-inverse"

_TOKEN = re.compile(r"[0-9a-z]+")


@dataclass(frozen=True)
class UnitSimilarityMatrix:
    """Similarity between the ordered narrative units of two adaptations."""

    row_units: tuple[str, ...]
    col_units: tuple[str, ...]
    values: np.ndarray
    source: str = ""

    def __post_init__(self):
        if self.values.shape != (len(self.row_units), len(self.col_units)):
            raise ValueError("value shape must match the unit lists")
        if not np.isfinite(self.values).all():
            raise ValueError("similarity entries must be finite")


@dataclass(frozen=True)
class GoldAlignment:
    """Hand-curated unit correspondences, as ordinal pairs at stated kinds."""

    row_kind: str
    col_kind: str
    pairs: frozenset[tuple[int, int]]

    def to_matrix(self, shape: tuple[int, int]) -> np.ndarray:
        M = np.zeros(shape, dtype=int)
        for i, j in self.pairs:
            if not (0 <= i < shape[0] and 0 <= j < shape[1]):
                raise ValueError(f"gold pair ({i}, {j}) outside shape {shape}")
            M[i, j] = 1
        return M


@dataclass(frozen=True)
class SWParams:
    """Scoring knobs of the many-to-many Smith-Waterman aligner.

    ``shift`` recentres normalised similarities so entries below it score
    negative; ``gap`` is charged per row- or column-repeating step;
    ``max_run`` optionally caps how many consecutive such steps one unit may
    absorb.
    """

    gap: float = 0.2
    shift: float = 0.5
    min_segment_score: float = 1.0
    max_run: int | None = None

    def __post_init__(self):
        if self.gap < 0:
            raise ValueError("gap penalty must be nonnegative")
        if self.max_run is not None and self.max_run < 1:
            raise ValueError("max_run must be at least 1")


class F1Score(NamedTuple):
    precision: float
    recall: float
    f1: float


class Segment(NamedTuple):
    score: float
    cells: tuple[tuple[int, int], ...]


def _values(S) -> np.ndarray:
    return np.asarray(getattr(S, "values", S), dtype=float)


# -- similarity matrices -------------------------------------------------------


def tokenize(text: str) -> list[str]:
    """Lowercase ASCII-alphanumeric runs of length at least 2."""
    return [t for t in _TOKEN.findall(text.lower()) if len(t) >= 2]


def tfidf_similarity(texts_a: Sequence[str], texts_b: Sequence[str]) -> np.ndarray:
    """Cosine similarity of TF-IDF weighted bags of words.

    One vocabulary and document-frequency table is shared across both
    corpora; IDF is the smoothed ln((1 + N) / (1 + df)) + 1. Pairs involving
    an all-zero vector score 0.
    """
    if not len(texts_a) or not len(texts_b):
        raise ValueError("both text collections must be non-empty")
    docs = [tokenize(t) for t in texts_a] + [tokenize(t) for t in texts_b]
    vocabulary = sorted({tok for doc in docs for tok in doc})
    index = {tok: k for k, tok in enumerate(vocabulary)}
    N = len(docs)
    df = Counter(tok for doc in docs for tok in set(doc))
    idf = np.array(
        [np.log((1 + N) / (1 + df[tok])) + 1.0 for tok in vocabulary]
    ) if vocabulary else np.zeros(0)

    def vectorize(doc: list[str]) -> np.ndarray:
        vec = np.zeros(len(vocabulary))
        for tok, count in Counter(doc).items():
            vec[index[tok]] = count
        return vec * idf

    A = np.array([vectorize(d) for d in docs[: len(texts_a)]])
    B = np.array([vectorize(d) for d in docs[len(texts_a) :]])
    norm_a = np.linalg.norm(A, axis=1)
    norm_b = np.linalg.norm(B, axis=1)
    sim = A @ B.T
    denom = norm_a[:, None] * norm_b[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(denom > 0, sim / np.where(denom > 0, denom, 1.0), 0.0)
    return sim


def embedding_similarity(
    vectors_a: Sequence[np.ndarray], vectors_b: Sequence[np.ndarray]
) -> np.ndarray:
    """Cosine similarity of precomputed embedding vectors."""
    A = np.asarray(vectors_a, dtype=float)
    B = np.asarray(vectors_b, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise ValueError("embeddings must share one dimension")
    norm_a = np.linalg.norm(A, axis=1)
    norm_b = np.linalg.norm(B, axis=1)
    if (norm_a == 0).any() or (norm_b == 0).any():
        raise ValueError("zero embedding vector")
    return (A / norm_a[:, None]) @ (B / norm_b[:, None]).T


def _slice_items(network_slice, representation: str, charset: set[str]):
    if representation == VERTICES:
        return {v for v in network_slice.vertices if v in charset}
    if representation == EDGES:
        return {
            pair
            for pair in network_slice.edges
            if pair[0] in charset and pair[1] in charset
        }
    raise ValueError(f"unknown representation {representation!r}")


def structural_similarity(
    dyn_a: DynamicNetwork,
    dyn_b: DynamicNetwork,
    representation: str = VERTICES,
    weighting: str = JACCARD,
    charset: Iterable[str] = (),
) -> np.ndarray:
    """Slice-by-slice similarity of two dynamic networks.

    Slices are compared through their vertex or edge sets restricted to the
    shared character set. ``jaccard`` is plain intersection over union;
    ``ruzicka-inverse`` weights each item by the inverse of its occurrence
    count within its own dynamic network, so rare characters and interactions
    dominate. Two empty slices score 0.
    """
    charset = set(charset)
    if not charset:
        raise ValueError("character set is empty")
    items_a = [_slice_items(s, representation, charset) for s in dyn_a.slices]
    items_b = [_slice_items(s, representation, charset) for s in dyn_b.slices]
    universe = sorted(set().union(*items_a, *items_b)) if (items_a or items_b) else []
    index = {item: k for k, item in enumerate(universe)}
    PA = np.zeros((len(items_a), len(universe)))
    PB = np.zeros((len(items_b), len(universe)))
    for i, items in enumerate(items_a):
        for item in items:
            PA[i, index[item]] = 1.0
    for j, items in enumerate(items_b):
        for item in items:
            PB[j, index[item]] = 1.0

    if weighting == JACCARD:
        value_a = np.ones(len(universe))
        value_b = np.ones(len(universe))
    elif weighting == RUZICKA_INVERSE:
        occ_a = PA.sum(axis=0)
        occ_b = PB.sum(axis=0)
        with np.errstate(divide="ignore"):
            value_a = np.where(occ_a > 0, 1.0 / np.where(occ_a > 0, occ_a, 1.0), 0.0)
            value_b = np.where(occ_b > 0, 1.0 / np.where(occ_b > 0, occ_b, 1.0), 0.0)
    else:
        raise ValueError(f"unknown weighting {weighting!r}")

    minima = (PA * np.minimum(value_a, value_b)) @ PB.T
    # max(x, y) summed = sum(x) + sum(y) - sum(min(x, y)), but items present
    # on one side only contribute their own value
    only_a = (PA * value_a) @ (1.0 - PB).T
    only_b = (1.0 - PA) @ (PB * value_b).T
    both_max = (PA * np.maximum(value_a, value_b)) @ PB.T
    maxima = both_max + only_a + only_b
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(maxima > 0, minima / np.where(maxima > 0, maxima, 1.0), 0.0)
    return sim


def minmax_normalize(S) -> np.ndarray:
    """Rescale entries to [0, 1]; constant input collapses to zeros."""
    S = _values(S)
    low, high = S.min(), S.max()
    if high == low:
        warnings.warn("matrix has fewer than 2 distinct values; returning zeros", stacklevel=2)
        return np.zeros_like(S)
    return (S - low) / (high - low)


def hybrid_combine(S_struct, S_text, alpha: float) -> np.ndarray:
    """Weighted sum of the min-max normalised structural and textual matrices."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    A = _values(S_struct)
    B = _values(S_text)
    if A.shape != B.shape:
        raise ValueError("matrices must have equal dimensions; extend first")
    return alpha * minmax_normalize(A) + (1.0 - alpha) * minmax_normalize(B)


def extend_matrix(S, row_map: Sequence[int], col_map: Sequence[int]) -> np.ndarray:
    """Duplicate coarse rows/columns onto a finer unit sequence.

    ``row_map[i]`` is the coarse row index of fine row ``i`` (and likewise
    for columns), so every fine cell copies its coarse value.
    """
    S = _values(S)
    row_map = np.asarray(row_map)
    col_map = np.asarray(col_map)
    if (row_map < 0).any() or (row_map >= S.shape[0]).any():
        raise ValueError("row map references a missing coarse unit")
    if (col_map < 0).any() or (col_map >= S.shape[1]).any():
        raise ValueError("column map references a missing coarse unit")
    return S[np.ix_(row_map, col_map)]


# -- aligners -------------------------------------------------------------------


def align_threshold(S, t: float) -> np.ndarray:
    """Binary alignment keeping entries strictly above the threshold."""
    return (_values(S) > t).astype(int)


def _dp_plain(s: np.ndarray, gap: float) -> np.ndarray:
    """Score table of the many-to-many recurrence, 1-based padded.

    The in-row dependency H(i,j) = max(c(i,j), H(i,j-1) + s(i,j) - gap)
    unrolls to a running maximum over the prefix sums T of (s - gap):
    H(i,j) = T(j) + max_{k<=j} (c(i,k) - T(k)), which vectorises the scan.
    """
    n = s.shape[0]
    H = np.zeros((n + 1, s.shape[1] + 1))
    _dp_refresh(H, s, gap, 1, n)
    return H


def _dp_refresh(H: np.ndarray, s: np.ndarray, gap: float, from_row: int, dirty_until: int) -> None:
    """Recompute H from ``from_row`` down, in place.

    Rows above ``from_row`` are untouched by the score changes, and once a
    row at or below ``dirty_until`` reproduces its previous values every
    later row would too, so the sweep stops early.
    """
    n, m = s.shape
    for i in range(from_row, n + 1):
        v = s[i - 1]
        c = np.maximum(0.0, np.maximum(H[i - 1, :m] + v, H[i - 1, 1:] + v - gap))
        T = np.cumsum(v - gap)
        row = T + np.maximum.accumulate(c - T)
        if i > dirty_until and np.array_equal(row, H[i, 1:]):
            return
        H[i, 1:] = row


def _backtrack_plain(H, s, gap, i, j, tol=1e-9):
    """Follow the recurrence back from cell (i, j), 1-based in H."""
    cells = []
    while i > 0 and j > 0 and H[i, j] > tol:
        cells.append((i - 1, j - 1))
        v = s[i - 1, j - 1]
        h = H[i, j]
        if abs(h - (H[i - 1, j - 1] + v)) <= tol:
            i, j = i - 1, j - 1
        elif abs(h - (H[i - 1, j] + v - gap)) <= tol:
            i -= 1
        elif abs(h - (H[i, j - 1] + v - gap)) <= tol:
            j -= 1
        else:  # numerical dead end; treat as segment start
            break
    return cells[::-1]


def _dp_capped(s: np.ndarray, gap: float, cap: int):
    """Run-capped variant: at most ``cap`` consecutive gap moves per axis."""
    n, m = s.shape
    neg = -np.inf
    D = np.full((n + 1, m + 1), neg)
    U = np.full((cap + 1, n + 1, m + 1), neg)
    L = np.full((cap + 1, n + 1, m + 1), neg)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            v = s[i - 1, j - 1]
            prev_best = max(0.0, D[i - 1, j - 1], U[1:, i - 1, j - 1].max(), L[1:, i - 1, j - 1].max())
            D[i, j] = v + prev_best
            U[1, i, j] = v - gap + max(D[i - 1, j], L[1:, i - 1, j].max(), neg)
            for t in range(2, cap + 1):
                U[t, i, j] = v - gap + U[t - 1, i - 1, j]
            L[1, i, j] = v - gap + max(D[i, j - 1], U[1:, i, j - 1].max(), neg)
            for t in range(2, cap + 1):
                L[t, i, j] = v - gap + L[t - 1, i, j - 1]
    H = np.maximum(0.0, np.maximum(D, np.maximum(U.max(axis=0), L.max(axis=0))))
    H[0, :] = 0.0
    H[:, 0] = 0.0
    return H, (D, U, L)


def _backtrack_capped(tables, s, gap, i, j, cap, tol=1e-9):
    D, U, L = tables

    def pick(i, j, kinds, target):
        # deterministic preference: diagonal state, then up runs, then left
        if "D" in kinds and abs(D[i, j] - target) <= tol:
            return ("D", 0)
        if "U" in kinds:
            for t in range(1, cap + 1):
                if abs(U[t, i, j] - target) <= tol:
                    return ("U", t)
        if "L" in kinds:
            for t in range(1, cap + 1):
                if abs(L[t, i, j] - target) <= tol:
                    return ("L", t)
        return None

    best = max(D[i, j], U[1:, i, j].max(), L[1:, i, j].max())
    state = pick(i, j, "DUL", best)
    cells = []
    while state is not None and i > 0 and j > 0:
        cells.append((i - 1, j - 1))
        kind, t = state
        v = s[i - 1, j - 1]
        if kind == "D":
            prev = D[i, j] - v
            i, j = i - 1, j - 1
            state = pick(i, j, "DUL", prev) if prev > tol else None
        elif kind == "U":
            prev = U[t, i, j] - v + gap
            i -= 1
            # a longer run forces its own continuation; a run of one may
            # follow anything that is not an up move
            state = ("U", t - 1) if t > 1 else pick(i, j, "DL", prev)
        else:
            prev = L[t, i, j] - v + gap
            j -= 1
            state = ("L", t - 1) if t > 1 else pick(i, j, "DU", prev)
    return cells[::-1]


def smith_waterman_segments(S, params: SWParams) -> list[Segment]:
    """Iteratively extract the highest-scoring local alignment segments.

    The input is min-max normalised and shifted by ``params.shift``; every
    visited cell scoring positive is a match, which is what lets one unit
    align to several. After each extraction the visited cells are zeroed and
    the table recomputed, until the best segment drops below the minimum
    segment score.
    """
    S = _values(S)
    if S.size == 0:
        return []
    active = minmax_normalize(S) - params.shift
    floor = max(params.min_segment_score, 1e-12)
    segments: list[Segment] = []
    H = None
    while True:
        if params.max_run is None:
            if H is None:
                H = _dp_plain(active, params.gap)
        else:
            H, tables = _dp_capped(active, params.gap, params.max_run)
        best = float(H.max())
        if best < floor:
            break
        i, j = np.unravel_index(int(H.argmax()), H.shape)  # first max: smallest (i, j)
        if params.max_run is None:
            cells = _backtrack_plain(H, active, params.gap, int(i), int(j))
        else:
            cells = _backtrack_capped(tables, active, params.gap, int(i), int(j), params.max_run)
        matched = tuple(c for c in cells if active[c] > 0)
        if not matched:
            break
        segments.append(Segment(best, matched))
        for c in cells:
            active[c] = 0.0
        if params.max_run is None:
            # scores changed only on the extracted path; refresh from its top
            dirty_rows = [c[0] + 1 for c in cells]
            _dp_refresh(H, active, params.gap, min(dirty_rows), max(dirty_rows))
    return segments


def align_smith_waterman(S, params: SWParams) -> np.ndarray:
    """Binary many-to-many alignment from iterated Smith-Waterman segments."""
    S = _values(S)
    return segments_to_matrix(
        smith_waterman_segments(S, params), S.shape, params.min_segment_score
    )


def segments_to_matrix(
    segments: Sequence[Segment], shape: tuple[int, int], min_score: float
) -> np.ndarray:
    """Rebuild the alignment a given minimum segment score would produce.

    Extraction order does not depend on the minimum score, which only decides
    where the loop stops, so the result for a higher minimum is the prefix of
    a lower-minimum run up to its first too-weak segment.
    """
    M = np.zeros(shape, dtype=int)
    for segment in segments:
        if segment.score < min_score:
            break
        for i, j in segment.cells:
            M[i, j] = 1
    return M


def coarsen_alignment(
    M, row_map: Sequence[int], col_map: Sequence[int], shape: tuple[int, int] | None = None
) -> np.ndarray:
    """Project a fine alignment up to coarse units: any fine match counts."""
    M = np.asarray(M)
    row_map = np.asarray(row_map)
    col_map = np.asarray(col_map)
    if len(row_map) != M.shape[0] or len(col_map) != M.shape[1]:
        raise ValueError("maps must cover every fine unit")
    if shape is None:
        shape = (int(row_map.max()) + 1, int(col_map.max()) + 1)
    out = np.zeros(shape, dtype=int)
    rows, cols = np.nonzero(M)
    for i, j in zip(rows, cols):
        out[row_map[i], col_map[j]] = 1
    return out


# -- evaluation -------------------------------------------------------------------


def evaluate_f1(M, gold) -> F1Score:
    """Cellwise precision, recall, and F1 of an alignment against gold."""
    M = np.asarray(M)
    G = np.asarray(gold)
    if M.shape != G.shape:
        raise ValueError(f"shape mismatch: {M.shape} vs {G.shape}")
    tp = int(((M == 1) & (G == 1)).sum())
    fp = int(((M == 1) & (G == 0)).sum())
    fn = int(((M == 0) & (G == 1)).sum())
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return F1Score(precision, recall, f1)


def percent(x: float) -> str:
    return f"{100.0 * x:.2f}"


def per_window_f1(M, gold, windows: Sequence, side: str = "columns") -> dict:
    """F1 restricted to each window of top-level units (e.g. per season)."""
    M = np.asarray(M)
    G = np.asarray(gold)
    windows = np.asarray(windows)
    axis_len = M.shape[1] if side == "columns" else M.shape[0]
    if len(windows) != axis_len:
        raise ValueError("every unit on the windowed side needs a window")
    scores = {}
    for w in sorted(set(windows.tolist())):
        mask = windows == w
        if side == "columns":
            scores[w] = evaluate_f1(M[:, mask], G[:, mask]).f1
        else:
            scores[w] = evaluate_f1(M[mask], G[mask]).f1
    return scores


# -- tuning -----------------------------------------------------------------------

SW_GAP_GRID = tuple(round(0.05 * i, 2) for i in range(1, 11))
SW_SHIFT_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))
SW_MIN_SEGMENT_GRID = (0.5, 1.0, 2.0, 4.0)
ALPHA_GRID = tuple(round(0.1 * i, 1) for i in range(11))
THRESHOLD_QUANTILES = 50


@dataclass(frozen=True)
class TuneResult:
    aligner: str
    params: object
    alpha: float | None
    mean_f1: float


@dataclass(frozen=True)
class DevPair:
    """One development pair of the tuning set.

    ``text`` is only set for hybrid tuning. ``row_map``/``col_map``, when
    given, project the aligned fine units up to the kinds of ``gold`` before
    scoring.
    """

    similarity: np.ndarray
    gold: np.ndarray
    text: np.ndarray | None = None
    row_map: Sequence[int] | None = None
    col_map: Sequence[int] | None = None

    def score(self, M: np.ndarray) -> float:
        if self.row_map is not None:
            M = coarsen_alignment(M, self.row_map, self.col_map, self.gold.shape)
        return evaluate_f1(M, self.gold).f1


def _as_dev_pair(pair) -> DevPair:
    if isinstance(pair, DevPair):
        return pair
    return DevPair(np.asarray(pair[0], float), np.asarray(pair[1]))


def _threshold_grid(matrices: Sequence[np.ndarray]) -> np.ndarray:
    pooled = np.concatenate([m.ravel() for m in matrices])
    return np.quantile(pooled, np.linspace(0.0, 1.0, THRESHOLD_QUANTILES))


def tune_params(
    dev_pairs: Sequence,
    aligner: str = "smith-waterman",
    hybrid: bool = False,
) -> TuneResult:
    """Grid-search alignment parameters on development media pairs.

    Pairs are ``(S, gold)`` tuples or :class:`DevPair` records; hybrid tuning
    needs the latter with ``text`` set, and sweeps the combination weight
    alpha too. The target pair must never be part of ``dev_pairs``. Ties keep
    the first grid point in the fixed iteration order, i.e. the
    lexicographically smallest parameter vector.
    """
    if not dev_pairs:
        raise ValueError("need at least one development pair")
    if aligner not in ("smith-waterman", "threshold"):
        raise ValueError(f"unknown aligner {aligner!r}")
    pairs = [_as_dev_pair(p) for p in dev_pairs]
    if hybrid and any(p.text is None for p in pairs):
        raise ValueError("hybrid tuning needs DevPair records with text matrices")

    def mean_f1(matrices, make) -> float:
        return sum(p.score(make(S)) for p, S in zip(pairs, matrices)) / len(pairs)

    alphas = ALPHA_GRID if hybrid else (None,)
    best: TuneResult | None = None
    for alpha in alphas:
        if hybrid:
            matrices = [hybrid_combine(p.similarity, p.text, alpha) for p in pairs]
        else:
            matrices = [minmax_normalize(p.similarity) for p in pairs]
        if aligner == "threshold":
            for t in _threshold_grid(matrices):
                score = mean_f1(matrices, lambda S: align_threshold(S, t))
                if best is None or score > best.mean_f1:
                    best = TuneResult("threshold", float(t), alpha, score)
        else:
            floor = min(SW_MIN_SEGMENT_GRID)
            for gap in SW_GAP_GRID:
                for shift in SW_SHIFT_GRID:
                    base = SWParams(gap=gap, shift=shift, min_segment_score=floor)
                    seg_lists = [smith_waterman_segments(S, base) for S in matrices]
                    for min_seg in SW_MIN_SEGMENT_GRID:
                        score = sum(
                            p.score(segments_to_matrix(segs, np.asarray(S).shape, min_seg))
                            for p, S, segs in zip(pairs, matrices, seg_lists)
                        ) / len(pairs)
                        if best is None or score > best.mean_f1:
                            params = SWParams(
                                gap=gap, shift=shift, min_segment_score=min_seg
                            )
                            best = TuneResult("smith-waterman", params, alpha, score)
    assert best is not None
    return best


# -- file formats -------------------------------------------------------------------


def load_summaries(path: str | Path) -> dict[str, str]:
    """Read per-unit summary texts (unit_id,text)."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["unit_id", "text"]:
            raise ValueError("summaries file needs header unit_id,text")
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"bad summaries row {row!r}")
            out[row[0].strip()] = row[1]
    return out


def load_embeddings(path: str | Path) -> dict[str, np.ndarray]:
    """Read per-unit embedding vectors (unit_id,dim0,dim1,...)."""
    out: dict[str, np.ndarray] = {}
    width: int | None = None
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or header[0].strip() != "unit_id":
            raise ValueError("embeddings file needs header unit_id,dim0,...")
        for row in reader:
            vec = np.array([float(v) for v in row[1:]])
            if width is None:
                width = len(vec)
            elif len(vec) != width:
                raise ValueError(f"embedding width changed at unit {row[0]!r}")
            out[row[0].strip()] = vec
    return out


def load_gold(
    path: str | Path,
    row_index: Mapping[str, int],
    col_index: Mapping[str, int],
) -> GoldAlignment:
    """Read sparse gold pairs; the header declares the row and column kinds.

    Expected header: ``row:<Kind>,col:<Kind>``; each data row holds a row
    unit id and a column unit id, which are resolved to ordinals through the
    provided indexes.
    """
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if (
            header is None
            or len(header) != 2
            or not header[0].strip().startswith("row:")
            or not header[1].strip().startswith("col:")
        ):
            raise ValueError("gold file needs header row:<Kind>,col:<Kind>")
        row_kind = header[0].split(":", 1)[1].strip()
        col_kind = header[1].split(":", 1)[1].strip()
        pairs = set()
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"bad gold row {row!r}")
            rid, cid = row[0].strip(), row[1].strip()
            if rid not in row_index or cid not in col_index:
                raise ValueError(f"gold pair ({rid!r}, {cid!r}) references unknown units")
            pairs.add((row_index[rid], col_index[cid]))
    return GoldAlignment(row_kind, col_kind, frozenset(pairs))


def export_alignment(
    M, row_units: Sequence[str], col_units: Sequence[str], path: str | Path
) -> None:
    """Write matched unit pairs as sparse CSV (row_unit_id,col_unit_id)."""
    M = np.asarray(M)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["row_unit_id", "col_unit_id"])
        for i, j in zip(*np.nonzero(M)):
            writer.writerow([row_units[i], col_units[j]])
