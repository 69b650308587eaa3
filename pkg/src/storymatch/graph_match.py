"""Character matching between two networks via graph matching.

Matchers operate on a :class:`MatchProblem`: two adjacency matrices aligned
onto a common index space (after padding), an optional soft prior similarity,
and hard seed pairs that the output must respect. Three relaxation matchers
share a Frank-Wolfe loop over doubly stochastic matrices; a percolation
matcher propagates from seeds; Umeyama's matcher uses eigenvector magnitudes.
All tie-breaking is deterministic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .networks import NetworkSlice

CONVEX = "convex"
INDEFINITE = "indefinite"
CONCAVE = "concave"

# exact lexicographic tie-breaking is guaranteed up to this size; above it,
# the canonicalisation pass would dominate the runtime
_LEX_CANONICAL_LIMIT = 32


@dataclass(frozen=True)
class MatchProblem:
    """Two graphs on a shared, ordered vertex index space."""

    A: np.ndarray
    B: np.ndarray
    labels1: tuple[str, ...]
    labels2: tuple[str, ...]
    prior: np.ndarray | None = None
    seeds: tuple[tuple[int, int], ...] = ()
    padded: bool = False
    centred: bool = False

    def __post_init__(self):
        n = len(self.labels1)
        if self.A.shape != (n, n) or self.B.shape != (len(self.labels2),) * 2:
            raise ValueError("adjacency shapes must match their label lists")
        if self.A.shape != self.B.shape:
            raise ValueError("graphs must be padded to equal size first")
        if self.prior is not None and self.prior.shape != self.A.shape:
            raise ValueError("prior must have the same shape as the adjacencies")
        if self.prior is not None and (self.prior < 0).any():
            raise ValueError("prior entries must be nonnegative")
        rows = [i for i, _ in self.seeds]
        cols = [j for _, j in self.seeds]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("hard seeds must be injective on both sides")

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def with_seeds(self, seeds: Iterable[tuple[int, int]]) -> "MatchProblem":
        return replace(self, seeds=tuple(seeds))

    def with_prior(self, prior: np.ndarray) -> "MatchProblem":
        return replace(self, prior=prior)

    def seed_names(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.labels1[i], self.labels2[j]) for i, j in self.seeds)


@dataclass(frozen=True)
class Matching:
    """Partial injective map between the character sets of two networks."""

    pairs: Mapping[str, str]
    confidence: Mapping[str, float]
    seeds: frozenset[tuple[str, str]] = frozenset()
    method: str = ""
    config: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        targets = list(self.pairs.values())
        if len(set(targets)) != len(targets):
            raise ValueError("matching is not injective")
        for a, b in self.seeds:
            if self.pairs.get(a) != b:
                raise ValueError(f"hard seed ({a!r}, {b!r}) missing from matching")

    def __len__(self) -> int:
        return len(self.pairs)


def pad_graphs(
    G1: NetworkSlice, G2: NetworkSlice, weights: str = "norm"
) -> MatchProblem:
    """Align two networks on the union of their vertex sets.

    Vertices present on only one side become isolates on the other; the index
    space is the sorted union of canonical names.
    """
    universe = tuple(sorted(set(G1.vertices) | set(G2.vertices)))
    A = G1.adjacency(universe, weights)
    B = G2.adjacency(universe, weights)
    padded = set(G1.vertices) != set(G2.vertices)
    return MatchProblem(A, B, universe, universe, padded=padded)


def problem_from_slices(
    G1: NetworkSlice,
    G2: NetworkSlice,
    charset: Iterable[str],
    weights: str = "norm",
) -> MatchProblem:
    """Restrict both networks to an explicit shared character set."""
    universe = tuple(sorted(charset))
    A = G1.adjacency(universe, weights)
    B = G2.adjacency(universe, weights)
    return MatchProblem(A, B, universe, universe)


def centre_adjacency(A: np.ndarray) -> np.ndarray:
    """Map off-diagonal entries x to 2x - 1 so absent edges count against.

    Not idempotent; apply exactly once.
    """
    A = np.asarray(A, dtype=float)
    if A.min() < 0 or A.max() > 1:
        raise ValueError("centring expects entries in [0, 1]")
    out = 2.0 * A - 1.0
    np.fill_diagonal(out, 0.0)
    return out


def lap_solve(cost: np.ndarray, maximize: bool = False) -> np.ndarray:
    """Optimal linear assignment; returns the column index per row.

    Rectangular inputs yield a partial assignment with -1 for unassigned
    rows. Among equally optimal assignments the lexicographically smallest
    assignment vector is returned for problems up to 32x32; larger instances
    return the solver's deterministic choice.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2:
        raise ValueError("cost must be a matrix")
    if not np.isfinite(cost).all():
        raise ValueError("cost entries must be finite")
    rows, cols = linear_sum_assignment(cost, maximize=maximize)
    assignment = np.full(cost.shape[0], -1, dtype=int)
    assignment[rows] = cols
    if max(cost.shape) <= _LEX_CANONICAL_LIMIT:
        assignment = _lex_canonicalize(cost, maximize, assignment)
    return assignment


def _assignment_value(cost: np.ndarray, assignment: np.ndarray) -> float:
    rows = np.nonzero(assignment >= 0)[0]
    return float(cost[rows, assignment[rows]].sum())


def _lex_canonicalize(
    cost: np.ndarray, maximize: bool, assignment: np.ndarray
) -> np.ndarray:
    """Rebuild the assignment row by row, preferring the smallest column
    among those that keep the optimum attainable."""
    _, m = cost.shape
    best = _assignment_value(cost, assignment)
    tol = 1e-9 * max(1.0, abs(best))
    assigned_rows = sorted(np.nonzero(assignment >= 0)[0])
    current = assignment.copy()
    prefix_value = 0.0
    used_cols: set[int] = set()
    for idx, row in enumerate(assigned_rows):
        rest_rows = assigned_rows[idx + 1 :]
        candidates = [c for c in range(m) if c not in used_cols]
        for col in candidates:
            if col == current[row]:
                break
            remaining = [c for c in range(m) if c not in used_cols and c != col]
            sub = cost[np.ix_(rest_rows, remaining)] if rest_rows else np.zeros((0, 0))
            if rest_rows:
                r_ind, c_ind = linear_sum_assignment(sub, maximize=maximize)
                if len(r_ind) < len(rest_rows):
                    continue
                rest_value = float(sub[r_ind, c_ind].sum())
            else:
                rest_value = 0.0
            total = prefix_value + cost[row, col] + rest_value
            if abs(total - best) <= tol:
                current[row] = col
                if rest_rows:
                    for rr, cc in zip(r_ind, c_ind):
                        current[rest_rows[rr]] = remaining[cc]
                break
        used_cols.add(current[row])
        prefix_value += cost[row, current[row]]
    return current


def _check_doubly_stochastic(D: np.ndarray, tol: float = 1e-8) -> None:
    if (np.abs(D.sum(axis=0) - 1) > tol).any() or (np.abs(D.sum(axis=1) - 1) > tol).any():
        raise AssertionError("iterate left the doubly stochastic polytope")


def _sinkhorn(M: np.ndarray, iterations: int = 200, tol: float = 1e-9) -> np.ndarray:
    """Project a positive matrix onto the doubly stochastic polytope."""
    D = np.asarray(M, dtype=float)
    if (D <= 0).any():
        D = D + 1e-12
    for _ in range(iterations):
        D = D / D.sum(axis=1, keepdims=True)
        D = D / D.sum(axis=0, keepdims=True)
        if (
            np.abs(D.sum(axis=1) - 1).max() < tol
            and np.abs(D.sum(axis=0) - 1).max() < tol
        ):
            break
    return D


class _RelaxObjective:
    """Blend of the squared-disagreement and trace objectives, minimised.

    lam = 0 gives the convex relaxation ||AD - DB||_F^2; lam = 1 gives the
    negated indefinite objective -tr(A D B D^T). A prior adds the linear
    reward -w * tr(P^T D) at unit blend.
    """

    def __init__(self, A, B, lam, prior=None, prior_weight=1.0):
        self.A, self.B, self.lam = A, B, lam
        self.P = prior
        self.w = prior_weight

    def value(self, D: np.ndarray) -> float:
        AD = self.A @ D
        total = 0.0
        if self.lam < 1.0:
            R = AD - D @ self.B
            total += (1.0 - self.lam) * float((R * R).sum())
        if self.lam > 0.0:
            # tr(A D B D^T) == sum((A D B) * D)
            total -= self.lam * float(((AD @ self.B) * D).sum())
        if self.P is not None:
            total -= self.w * float((self.P * D).sum())
        return total

    def gradient(self, D: np.ndarray) -> np.ndarray:
        AD = self.A @ D
        DB = D @ self.B
        grad = np.zeros_like(D)
        if self.lam < 1.0:
            grad += (1.0 - self.lam) * 2.0 * (self.A @ (AD - DB) - (AD - DB) @ self.B)
        if self.lam > 0.0:
            grad -= self.lam * 2.0 * (AD @ self.B)
        if self.P is not None:
            grad -= self.w * self.P
        return grad


def _frank_wolfe(objective, D0, free_rows, free_cols, max_iter, tol, trace=None):
    """Minimise over the seed-respecting doubly stochastic polytope.

    Directions come from a linear assignment on the free block; step sizes
    from an exact quadratic line search. Returns the best iterate seen and a
    convergence flag. ``trace``, when given, collects the objective value at
    every accepted iterate.
    """
    D = D0.copy()
    best_D, best_val = D.copy(), objective.value(D)
    converged = False
    n_free = max(1, len(free_rows))
    if trace is not None:
        trace.append(best_val)
    for _ in range(max_iter):
        _check_doubly_stochastic(D)
        grad = objective.gradient(D)
        cols = lap_solve(grad[np.ix_(free_rows, free_cols)], maximize=False)
        block = np.zeros((len(free_rows), len(free_cols)))
        block[np.arange(len(free_rows)), cols] = 1.0
        Q = D.copy()
        Q[np.ix_(free_rows, free_cols)] = block

        # phi(alpha) = objective((1-alpha) D + alpha Q) is quadratic in alpha
        phi0 = objective.value(D)
        phi1 = objective.value(Q)
        phih = objective.value(0.5 * (D + Q))
        a = 2.0 * (phi1 + phi0 - 2.0 * phih)
        b = phi1 - phi0 - a
        candidates = [0.0, 1.0]
        if a > 0:
            vertex = -b / (2.0 * a)
            if 0.0 < vertex < 1.0:
                candidates.append(vertex)
        alpha = min(candidates, key=lambda x: a * x * x + b * x)
        if alpha == 0.0:
            converged = True
            break
        D_next = (1.0 - alpha) * D + alpha * Q
        step = float(np.linalg.norm(D_next - D)) / np.sqrt(n_free)
        D = D_next
        val = objective.value(D)
        if trace is not None:
            trace.append(val)
        if val < best_val:
            best_val, best_D = val, D.copy()
        if step < tol:
            converged = True
            break
    _check_doubly_stochastic(D)
    final_val = objective.value(D)
    if final_val < best_val:
        best_val, best_D = final_val, D.copy()
    return best_D, converged


def _initial_iterate(problem, start, free_rows, free_cols):
    n = problem.size
    D = np.zeros((n, n))
    for i, j in problem.seeds:
        D[i, j] = 1.0
    if start is None:
        block = np.full((len(free_rows), len(free_cols)), 1.0 / max(1, len(free_rows)))
    else:
        start = np.asarray(start, dtype=float)
        if start.shape == (n, n):
            block = start[np.ix_(free_rows, free_cols)]
        elif start.shape == (len(free_rows), len(free_cols)):
            block = start
        else:
            raise ValueError("start matrix has the wrong shape")
        block = _sinkhorn(block)
    D[np.ix_(free_rows, free_cols)] = block
    return D


def _project_to_matching(problem, D, method, config, confidence_from=None):
    free_rows = [i for i in range(problem.size) if i not in {s[0] for s in problem.seeds}]
    free_cols = [j for j in range(problem.size) if j not in {s[1] for s in problem.seeds}]
    pairs: dict[str, str] = {}
    confidence: dict[str, float] = {}
    for i, j in problem.seeds:
        pairs[problem.labels1[i]] = problem.labels2[j]
        confidence[problem.labels1[i]] = 1.0
    if free_rows:
        source = D if confidence_from is None else confidence_from
        cols = lap_solve(D[np.ix_(free_rows, free_cols)], maximize=True)
        for r, c in enumerate(cols):
            if c < 0:
                continue
            i, j = free_rows[r], free_cols[c]
            pairs[problem.labels1[i]] = problem.labels2[j]
            confidence[problem.labels1[i]] = float(source[i, j])
    return Matching(
        pairs=pairs,
        confidence=confidence,
        seeds=problem.seed_names(),
        method=method,
        config=config,
    )


def match_relax(
    problem: MatchProblem,
    objective: str = INDEFINITE,
    start: np.ndarray | None = None,
    max_iter: int = 50,
    tol: float = 1e-6,
    prior_weight: float = 1.0,
    lambda_schedule: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
) -> Matching:
    """Frank-Wolfe graph matching under one of three relaxations.

    ``convex`` minimises the squared edge disagreement; ``indefinite``
    maximises the trace alignment objective; ``concave`` follows a
    warm-started interpolation path from the convex to the indefinite
    objective. Hard seeds stay fixed throughout; the final doubly stochastic
    iterate is rounded to a permutation by linear assignment.
    """
    if objective not in (CONVEX, INDEFINITE, CONCAVE):
        raise ValueError(f"unknown objective {objective!r}")
    seed_rows = {i for i, _ in problem.seeds}
    seed_cols = {j for _, j in problem.seeds}
    free_rows = [i for i in range(problem.size) if i not in seed_rows]
    free_cols = [j for j in range(problem.size) if j not in seed_cols]
    config = {
        "objective": objective,
        "max_iter": max_iter,
        "tol": tol,
        "prior_weight": prior_weight,
    }
    if not free_rows:
        return _project_to_matching(problem, np.zeros_like(problem.A), "relax", config)

    D = _initial_iterate(problem, start, free_rows, free_cols)
    if objective == CONVEX:
        lambdas = [0.0]
    elif objective == INDEFINITE:
        lambdas = [1.0]
    else:
        lambdas = list(lambda_schedule)
        config["lambda_schedule"] = tuple(lambdas)
    converged = True
    for lam in lambdas:
        goal = _RelaxObjective(problem.A, problem.B, lam, problem.prior, prior_weight)
        D, ok = _frank_wolfe(goal, D, free_rows, free_cols, max_iter, tol)
        converged = converged and ok
    config["converged"] = converged
    return _project_to_matching(problem, D, "relax", config)


def match_umeyama(problem: MatchProblem, prior_weight: float = 1.0) -> Matching:
    """Spectral matching on entrywise-absolute eigenvector matrices."""
    if not np.allclose(problem.A, problem.A.T) or not np.allclose(
        problem.B, problem.B.T
    ):
        raise ValueError("umeyama matching needs symmetric adjacencies")
    wa, Ua = np.linalg.eigh(problem.A)
    wb, Ub = np.linalg.eigh(problem.B)
    Ua = np.abs(Ua[:, np.argsort(wa)[::-1]])
    Ub = np.abs(Ub[:, np.argsort(wb)[::-1]])
    similarity = Ua @ Ub.T
    if problem.prior is not None:
        similarity = similarity + prior_weight * problem.prior
    seed_rows = {i for i, _ in problem.seeds}
    seed_cols = {j for _, j in problem.seeds}
    free_rows = [i for i in range(problem.size) if i not in seed_rows]
    free_cols = [j for j in range(problem.size) if j not in seed_cols]
    D = np.zeros_like(similarity)
    if free_rows:
        D[np.ix_(free_rows, free_cols)] = similarity[np.ix_(free_rows, free_cols)]
    return _project_to_matching(
        problem,
        D,
        "umeyama",
        {"prior_weight": prior_weight},
        confidence_from=similarity,
    )


def match_percolation(
    problem: MatchProblem, r: int = 2, fallback: bool = True
) -> Matching:
    """Seed-and-expand matching driven by neighbour-pair marks.

    Every matched pair (u, v) adds one mark to each unmatched candidate pair
    of neighbours of u and v. The candidate with the most marks (at least
    ``r``) is matched next; ties break on (marks desc, name pair asc). With
    ``fallback``, a stalled expansion retries with threshold 1.
    """
    if not problem.seeds:
        raise ValueError("percolation matching needs at least one seed")
    A = problem.A > 0
    B = problem.B > 0
    neighbours1 = [np.nonzero(A[i])[0] for i in range(problem.size)]
    neighbours2 = [np.nonzero(B[j])[0] for j in range(problem.size)]

    matched1: dict[int, int] = {}
    matched2: dict[int, int] = {}
    marks: dict[tuple[int, int], int] = {}
    confidence: dict[str, float] = {}

    def propagate(u: int, v: int) -> None:
        for i in neighbours1[u]:
            if i in matched1:
                continue
            for j in neighbours2[v]:
                if j in matched2:
                    continue
                marks[(int(i), int(j))] = marks.get((int(i), int(j)), 0) + 1

    for i, j in problem.seeds:
        matched1[i] = j
        matched2[j] = i
        confidence[problem.labels1[i]] = 1.0
    for i, j in problem.seeds:
        propagate(i, j)

    threshold = r
    while True:
        candidates = [
            (count, i, j)
            for (i, j), count in marks.items()
            if i not in matched1 and j not in matched2
        ]
        if not candidates:
            break
        best = min(
            candidates,
            key=lambda item: (-item[0], problem.labels1[item[1]], problem.labels2[item[2]]),
        )
        count, i, j = best
        if count < threshold:
            if fallback and threshold > 1:
                threshold = 1
                continue
            break
        matched1[i] = j
        matched2[j] = i
        confidence[problem.labels1[i]] = float(count)
        marks = {
            (a, b): c for (a, b), c in marks.items() if a not in matched1 and b not in matched2
        }
        propagate(i, j)

    pairs = {problem.labels1[i]: problem.labels2[j] for i, j in matched1.items()}
    return Matching(
        pairs=pairs,
        confidence=confidence,
        seeds=problem.seed_names(),
        method="percolation",
        config={"r": r, "fallback": fallback},
    )


_BASE_METHODS = {
    CONVEX: lambda p, **kw: match_relax(p, objective=CONVEX, **kw),
    INDEFINITE: lambda p, **kw: match_relax(p, objective=INDEFINITE, **kw),
    CONCAVE: lambda p, **kw: match_relax(p, objective=CONCAVE, **kw),
    "percolation": lambda p, **kw: match_percolation(p, **kw),
    "umeyama": lambda p, **kw: match_umeyama(p, **kw),
}


def _soft_weight(problem: MatchProblem) -> float:
    scale = float(np.abs(problem.A).max() * np.abs(problem.B).max()) * problem.size
    return 10.0 * max(1.0, scale)


def match_adaptive(
    problem: MatchProblem,
    base_method: str,
    seed_mode: str = "hard",
    rounds: int = 1,
    seeds_per_round: int = 5,
    soft_weight: float | None = None,
    **base_kwargs,
) -> Matching:
    """Iterated matching that feeds its most confident pairs back as seeds.

    Round k reuses the top ``k * seeds_per_round`` pairs by confidence. In
    hard mode they become fixed seeds; in soft mode they turn into a strong
    prior (and, for percolation, which has no prior channel, into seeds).
    With ``rounds=0`` this is exactly the base method.
    """
    if base_method not in _BASE_METHODS:
        raise ValueError(f"unknown base method {base_method!r}")
    if seed_mode not in ("hard", "soft"):
        raise ValueError(f"unknown seed mode {seed_mode!r}")
    run = _BASE_METHODS[base_method]
    matching = run(problem, **base_kwargs)
    index1 = {name: i for i, name in enumerate(problem.labels1)}
    index2 = {name: j for j, name in enumerate(problem.labels2)}

    for round_no in range(1, rounds + 1):
        budget = round_no * seeds_per_round
        ranked = sorted(
            matching.pairs.items(),
            key=lambda item: (-matching.confidence.get(item[0], 0.0), item[0], item[1]),
        )
        picked = ranked[: min(budget, len(ranked))]
        seed_pairs = [(index1[a], index2[b]) for a, b in picked]
        if seed_mode == "hard" or base_method == "percolation":
            staged = problem.with_seeds(
                sorted(set(problem.seeds) | set(seed_pairs))
            )
        else:
            weight = soft_weight if soft_weight is not None else _soft_weight(problem)
            prior = (
                problem.prior.copy()
                if problem.prior is not None
                else np.zeros_like(problem.A)
            )
            for i, j in seed_pairs:
                prior[i, j] += weight
            staged = problem.with_prior(prior)
        matching = run(staged, **base_kwargs)
    return Matching(
        pairs=matching.pairs,
        confidence=matching.confidence,
        seeds=problem.seed_names(),
        method=f"adaptive-{seed_mode}-{base_method}",
        config={
            "rounds": rounds,
            "seeds_per_round": seeds_per_round,
            "base": dict(matching.config),
        },
    )


def match_adaptive_temporal(
    slices1: Sequence[NetworkSlice],
    slices2: Sequence[NetworkSlice],
    charset: Iterable[str],
    base_method: str = INDEFINITE,
    seeds_per_slice: int = 5,
    **base_kwargs,
) -> Matching:
    """Per-slice adaptive seeding over two cumulative dynamic networks.

    Each slice is matched with the previous slice's most confident pairs as
    hard seeds. Reported for completeness; it performs poorly in practice.
    """
    if len(slices1) != len(slices2):
        raise ValueError("dynamic networks must have the same number of slices")
    universe = tuple(sorted(charset))
    run = _BASE_METHODS[base_method]
    seeds: list[tuple[int, int]] = []
    matching: Matching | None = None
    index = {name: i for i, name in enumerate(universe)}
    for s1, s2 in zip(slices1, slices2):
        problem = MatchProblem(
            s1.adjacency(universe),
            s2.adjacency(universe),
            universe,
            universe,
            seeds=tuple(seeds),
        )
        matching = run(problem, **base_kwargs)
        ranked = sorted(
            matching.pairs.items(),
            key=lambda item: (-matching.confidence.get(item[0], 0.0), item[0], item[1]),
        )
        seeds = [
            (index[a], index[b]) for a, b in ranked[: seeds_per_slice]
        ]
    assert matching is not None
    return matching


def attribute_prior(
    chars1: Sequence,
    chars2: Sequence,
    use_sex: bool = True,
    use_affiliation: bool = True,
) -> np.ndarray:
    """Mean 0/1 agreement of the enabled attributes per character pair.

    Unknown sex and empty affiliation never agree, not even with themselves.
    """
    if not use_sex and not use_affiliation:
        raise ValueError("enable at least one attribute")
    from .corpus import Sex

    parts = []
    if use_sex:
        s1 = np.array([c.sex.value for c in chars1])
        s2 = np.array([c.sex.value for c in chars2])
        agree = (s1[:, None] == s2[None, :]) & (s1[:, None] != Sex.UNKNOWN.value)
        parts.append(agree.astype(float))
    if use_affiliation:
        a1 = np.array([c.affiliation for c in chars1])
        a2 = np.array([c.affiliation for c in chars2])
        agree = (a1[:, None] == a2[None, :]) & (a1[:, None] != "")
        parts.append(agree.astype(float))
    return sum(parts) / len(parts)


def evaluate_matching(
    matching: Matching,
    ground_truth: Mapping[str, str] | None = None,
    exclude_seeds: bool = True,
    universe: Iterable[str] | None = None,
) -> float:
    """Fraction of correctly matched non-seed pairs.

    Ground truth defaults to canonical-name identity; a correspondence map
    covers characters renamed between adaptations. By default the denominator
    is the number of non-seed matched pairs; passing ``universe`` scores
    against that whole character set instead, counting unmatched members as
    incorrect (how partial matchers like mutual-best are reported).
    """
    seeds = matching.seeds if exclude_seeds else frozenset()
    seeded_names = {a for a, _ in seeds}
    correct = 0
    evaluated = 0
    for a, b in matching.pairs.items():
        if (a, b) in seeds:
            continue
        expected = ground_truth.get(a, a) if ground_truth else a
        evaluated += 1
        if b == expected:
            correct += 1
    if universe is not None:
        evaluated = len([c for c in universe if c not in seeded_names])
    if evaluated == 0:
        raise ValueError("no evaluable pairs outside the seeds")
    return correct / evaluated


def export_matching(matching: Matching, path: str | Path) -> None:
    """Write the matching as CSV: char_side1,char_side2,confidence,is_seed."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["char_side1", "char_side2", "confidence", "is_seed"])
        for a in sorted(matching.pairs):
            b = matching.pairs[a]
            writer.writerow(
                [
                    a,
                    b,
                    f"{matching.confidence.get(a, 0.0):.10g}",
                    str((a, b) in matching.seeds).lower(),
                ]
            )


def load_correspondence(path: str | Path) -> dict[str, str]:
    """Read a renamed-characters correspondence CSV (name_side1,name_side2)."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["name_side1", "name_side2"]:
            raise ValueError("correspondence file needs header name_side1,name_side2")
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"bad correspondence row {row!r}")
            mapping[row[0].strip()] = row[1].strip()
    return mapping
