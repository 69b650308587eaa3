"""Neighbourhood-similarity character matching.

Characters of two networks are compared through the weighted Jaccard
(Ruzicka) similarity of their adjacency rows over a shared, ordered character
universe. A pair counts as a match only when it is the best in both
directions; a sequential variant votes over the slices of two dynamic
networks and keeps the modal partner.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph_match import Matching
from .networks import DynamicNetwork, NetworkSlice


@dataclass(frozen=True)
class CharSimilarityMatrix:
    """Row characters are side 1, columns side 2; not symmetric in general."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (len(self.rows), len(self.cols)):
            raise ValueError("value shape must match the label lists")

    def entry(self, row: str, col: str) -> float:
        return float(self.values[self.rows.index(row), self.cols.index(col)])


def ruzicka(x, y) -> float:
    """Weighted Jaccard similarity: sum of minima over sum of maxima.

    Two all-zero vectors score 0 by convention so that isolates never match.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("vectors must have equal length")
    if (x < 0).any() or (y < 0).any():
        raise ValueError("vectors must be nonnegative")
    denom = np.maximum(x, y).sum()
    if denom == 0:
        return 0.0
    return float(np.minimum(x, y).sum() / denom)


def ruzicka_matrix(X: np.ndarray, Y: np.ndarray, block: int = 64) -> np.ndarray:
    """Pairwise Ruzicka similarity of the rows of X against the rows of Y."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape[1] != Y.shape[1]:
        raise ValueError("row vectors must share a dimension")
    out = np.zeros((X.shape[0], Y.shape[0]))
    for start in range(0, X.shape[0], block):
        chunk = X[start : start + block][:, None, :]
        mins = np.minimum(chunk, Y[None, :, :]).sum(axis=2)
        maxs = np.maximum(chunk, Y[None, :, :]).sum(axis=2)
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(maxs > 0, mins / np.where(maxs > 0, maxs, 1.0), 0.0)
        out[start : start + block] = ratio
    return out


def neighborhood_similarity(
    G1: NetworkSlice, G2: NetworkSlice, charset: Iterable[str]
) -> CharSimilarityMatrix:
    """Ruzicka similarity of normalised adjacency rows over ``charset``.

    Both graphs are restricted and zero-padded to the same sorted character
    universe, so rows and columns line up; the self-columns are kept.
    """
    universe = tuple(sorted(charset))
    if not universe:
        raise ValueError("character universe is empty")
    A1 = G1.adjacency(universe, "norm")
    A2 = G2.adjacency(universe, "norm")
    return CharSimilarityMatrix(universe, universe, ruzicka_matrix(A1, A2))


def mutual_best_match(sim: CharSimilarityMatrix) -> Matching:
    """Keep pair (v1, v2) only when each is the other's best similarity.

    Argmax ties break on the label ascending, which makes the output
    deterministic and injective.
    """
    values = sim.values
    pairs: dict[str, str] = {}
    confidence: dict[str, float] = {}
    if values.size:
        # scanning labels in sorted order makes the first argmax the
        # alphabetically smallest among ties
        col_order = np.array(sorted(range(len(sim.cols)), key=lambda j: sim.cols[j]))
        row_order = np.array(sorted(range(len(sim.rows)), key=lambda i: sim.rows[i]))
        row_best = col_order[values[:, col_order].argmax(axis=1)]
        col_best = row_order[values[row_order, :].argmax(axis=0)]
        for i, j in enumerate(row_best):
            if col_best[j] == i:
                pairs[sim.rows[i]] = sim.cols[j]
                confidence[sim.rows[i]] = float(values[i, j])
    return Matching(pairs=pairs, confidence=confidence, method="mutual-best")


def sequential_match(
    dyn1: DynamicNetwork,
    dyn2: DynamicNetwork,
    charset: Iterable[str],
    rng: np.random.Generator | None = None,
) -> Matching:
    """Match per slice, then keep each character's modal partner.

    Requires equally long dynamic networks. Vote ties break on the earliest
    first occurrence, then label; pass ``rng`` to break them randomly instead
    (fidelity mode). Conflicting claims on one partner are resolved by the
    higher vote count, then label.
    """
    if len(dyn1) != len(dyn2):
        raise ValueError("dynamic networks must have the same number of slices")
    universe = tuple(sorted(charset))
    votes: dict[str, dict[str, int]] = {}
    first_seen: dict[tuple[str, str], int] = {}
    for t, (s1, s2) in enumerate(zip(dyn1.slices, dyn2.slices)):
        sim = CharSimilarityMatrix(
            universe,
            universe,
            ruzicka_matrix(s1.adjacency(universe), s2.adjacency(universe)),
        )
        step = mutual_best_match(sim)
        for a, b in step.pairs.items():
            votes.setdefault(a, {})
            votes[a][b] = votes[a].get(b, 0) + 1
            first_seen.setdefault((a, b), t)

    # modal partner per character
    proposals: list[tuple[str, str, int]] = []
    for a, partners in sorted(votes.items()):
        top = max(partners.values())
        tied = [cand for cand, count in partners.items() if count == top]
        if rng is not None and len(tied) > 1:
            b = tied[int(rng.integers(len(tied)))]
        else:
            b = min(tied, key=lambda cand: (first_seen[(a, cand)], cand))
        proposals.append((a, b, top))

    # enforce injectivity: strongest vote count wins a contested partner
    proposals.sort(key=lambda item: (-item[2], item[0]))
    pairs: dict[str, str] = {}
    confidence: dict[str, float] = {}
    taken: set[str] = set()
    for a, b, count in proposals:
        if b in taken:
            continue
        pairs[a] = b
        confidence[a] = float(count)
        taken.add(b)
    return Matching(
        pairs=pairs,
        confidence=confidence,
        method="sequential",
        config={"slices": len(dyn1)},
    )


def self_alter_gap(
    sim: CharSimilarityMatrix,
    pairs: Mapping[str, str] | None = None,
    characters: Sequence[str] | None = None,
) -> dict[str, float]:
    """Self-similarity minus the best alter-similarity, per character.

    ``pairs`` maps side-1 names to their side-2 identity when the character
    was renamed between adaptations; by default names are matched literally.
    A positive gap means the directional match is correct.
    """
    rows = characters if characters is not None else sim.rows
    col_index = {name: k for k, name in enumerate(sim.cols)}
    gaps: dict[str, float] = {}
    for name in rows:
        counterpart = pairs.get(name, name) if pairs else name
        if name not in sim.rows or counterpart not in col_index:
            raise KeyError(f"character {name!r} missing on one side")
        i = sim.rows.index(name)
        j = col_index[counterpart]
        row = sim.values[i]
        others = np.delete(row, j)
        best_alter = float(others.max()) if others.size else 0.0
        gaps[name] = float(row[j]) - best_alter
    return gaps


def export_similarity_csv(sim: CharSimilarityMatrix, path: str | Path) -> None:
    """Write the similarity matrix as CSV with row and column headers."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["character", *sim.cols])
        for i, name in enumerate(sim.rows):
            writer.writerow([name, *(f"{v:.10g}" for v in sim.values[i])])
