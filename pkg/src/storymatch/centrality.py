"""Centrality profiles, correlations, and profile-based clustering.

Each character gets an eight-dimensional profile: degree, strength, and the
unweighted and weighted variants of betweenness, closeness, and eigenvector
centrality. Weighted shortest-path metrics travel along edge lengths of one
over the normalised weight, so strong ties are short; closeness uses the
harmonic convention (sum of inverse distances, unreachable pairs contribute
0), which stays finite on disconnected graphs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.stats import rankdata
from sklearn.metrics import adjusted_rand_score, silhouette_score

from .networks import NetworkSlice

METRICS = (
    "degree",
    "strength",
    "betweenness",
    "betweenness_w",
    "closeness",
    "closeness_w",
    "eigenvector",
    "eigenvector_w",
)


@dataclass(frozen=True)
class CentralityProfiles:
    characters: tuple[str, ...]
    raw: np.ndarray
    z: np.ndarray

    @property
    def metrics(self) -> tuple[str, ...]:
        return METRICS

    def row(self, character: str) -> np.ndarray:
        return self.z[self.characters.index(character)]


def _zscore(columns: np.ndarray) -> np.ndarray:
    mean = columns.mean(axis=0)
    std = columns.std(axis=0)
    out = np.zeros_like(columns)
    ok = std > 0
    out[:, ok] = (columns[:, ok] - mean[ok]) / std[ok]
    return out


def _eigenvector_scores(G: nx.Graph, weight: str | None) -> dict[str, float]:
    nodes = list(G.nodes)
    if len(nodes) < 2 or G.number_of_edges() == 0:
        return {v: 0.0 for v in nodes}
    A = nx.to_numpy_array(G, nodelist=nodes, weight=weight)
    values, vectors = np.linalg.eigh(A)
    leading = vectors[:, np.argmax(values)]
    if leading.sum() < 0:
        leading = -leading
    leading = np.clip(leading, 0.0, None)
    norm = np.linalg.norm(leading)
    if norm > 0:
        leading = leading / norm
    return {v: float(s) for v, s in zip(nodes, leading)}


def compute_profiles(
    network: NetworkSlice, charset: Iterable[str] | None = None
) -> CentralityProfiles:
    """Raw and z-scored centrality profiles over a character set.

    Metrics are computed on the whole slice; profiling and standardisation
    are restricted to ``charset``, which must be a subset of the vertices.
    """
    vertices = set(network.vertices)
    characters = tuple(sorted(charset)) if charset is not None else network.vertices
    missing = [c for c in characters if c not in vertices]
    if missing:
        raise ValueError(f"characters not in network: {missing}")
    if not characters:
        raise ValueError("empty character set")

    G = network.to_networkx()
    degree = dict(G.degree())
    strength = dict(G.degree(weight="weight"))
    betweenness = nx.betweenness_centrality(G, normalized=True)
    betweenness_w = nx.betweenness_centrality(G, normalized=True, weight="length")
    closeness = nx.harmonic_centrality(G)
    closeness_w = nx.harmonic_centrality(G, distance="length")
    eigenvector = _eigenvector_scores(G, weight=None)
    eigenvector_w = _eigenvector_scores(G, weight="weight")

    table = np.array(
        [
            [
                degree[c],
                strength[c],
                betweenness[c],
                betweenness_w[c],
                closeness[c],
                closeness_w[c],
                eigenvector[c],
                eigenvector_w[c],
            ]
            for c in characters
        ],
        dtype=float,
    )
    return CentralityProfiles(characters, table, _zscore(table))


def spearman_matrix(profiles: CentralityProfiles | np.ndarray) -> np.ndarray:
    """Spearman correlation between metric columns, with average-rank ties."""
    table = profiles.raw if isinstance(profiles, CentralityProfiles) else np.asarray(profiles, float)
    if table.shape[0] < 3:
        raise ValueError("need at least 3 characters")
    ranks = np.column_stack([rankdata(table[:, k]) for k in range(table.shape[1])])
    centered = ranks - ranks.mean(axis=0)
    scale = np.sqrt((centered**2).sum(axis=0))
    out = np.eye(table.shape[1])
    for i in range(table.shape[1]):
        for j in range(i + 1, table.shape[1]):
            if scale[i] == 0 or scale[j] == 0:
                rho = 0.0
            else:
                rho = float((centered[:, i] * centered[:, j]).sum() / (scale[i] * scale[j]))
            out[i, j] = out[j, i] = rho
    return out


def cluster_profiles(
    profiles: CentralityProfiles,
    k: int | None = None,
    linkage_method: str = "average",
) -> dict[str, int]:
    """Agglomerative clustering of z-scored profiles, silhouette-cut.

    When ``k`` is not given, the dendrogram is cut at the number of clusters
    in [2, min(10, n - 1)] that maximises the mean silhouette (smaller k wins
    ties). Cluster ids are renumbered by order of first appearance.
    """
    X = profiles.z
    n = X.shape[0]
    if n < 2:
        raise ValueError("need at least 2 characters to cluster")
    Z = linkage(X, method=linkage_method, metric="euclidean")
    if k is not None:
        if not 2 <= k <= n:
            raise ValueError(f"k={k} outside [2, {n}]")
        labels = fcluster(Z, t=k, criterion="maxclust")
    else:
        best_k, best_score = 2, -np.inf
        for candidate in range(2, min(10, n - 1) + 1):
            labels = fcluster(Z, t=candidate, criterion="maxclust")
            if len(set(labels)) < 2:
                continue
            score = silhouette_score(X, labels, metric="euclidean")
            if score > best_score:
                best_k, best_score = candidate, score
        labels = fcluster(Z, t=best_k, criterion="maxclust")
    relabel: dict[int, int] = {}
    partition: dict[str, int] = {}
    for name, label in zip(profiles.characters, labels):
        if label not in relabel:
            relabel[label] = len(relabel)
        partition[name] = relabel[label]
    return partition


def ari(p1: Mapping[str, int], p2: Mapping[str, int]) -> float:
    """Adjusted Rand index between two partitions of the same universe."""
    if set(p1) != set(p2):
        raise ValueError("partitions cover different element universes")
    order = sorted(p1)
    labels1 = [p1[e] for e in order]
    labels2 = [p2[e] for e in order]
    return float(adjusted_rand_score(labels1, labels2))


def export_profiles(profiles: CentralityProfiles, path: str | Path) -> None:
    """Write raw and z-scored profile columns as CSV."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["character", *METRICS, *(f"z_{m}" for m in METRICS)]
        )
        for i, name in enumerate(profiles.characters):
            writer.writerow(
                [
                    name,
                    *(f"{v:.10g}" for v in profiles.raw[i]),
                    *(f"{v:.10g}" for v in profiles.z[i]),
                ]
            )


def export_partition(partition: Mapping[str, int], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["character", "cluster_id"])
        for name in sorted(partition):
            writer.writerow([name, partition[name]])


def export_correlation(matrix: np.ndarray, path: str | Path, labels: Sequence[str] = METRICS) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["metric", *labels])
        for i, name in enumerate(labels):
            writer.writerow([name, *(f"{v:.10g}" for v in matrix[i])])
