"""Static and dynamic character networks with topology statistics.

Networks integrate annotated interactions over narrative units. A static
network covers a whole period; a dynamic network is an ordered sequence of
per-unit slices, either *instant* (each slice holds only its own unit's
interactions) or *cumulative* (each slice holds everything up to and
including its unit). Edge weights are interaction counts, max-normalised per
slice so the heaviest edge weighs 1.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Iterable, Mapping

import networkx as nx
import numpy as np

from .corpus import Corpus, CorpusError, NarrativeUnit, PeriodSpec, UnitKind

INSTANT = "instant"
CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class NetworkSlice:
    """Weighted undirected character graph over a set of narrative units.

    ``edges`` maps canonically ordered name pairs to raw interaction counts.
    """

    vertices: tuple[str, ...]
    edges: Mapping[tuple[str, str], int]
    covered_units: frozenset[str] = frozenset()

    def __post_init__(self):
        for (a, b) in self.edges:
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a > b:
                raise ValueError(f"edge ({a!r}, {b!r}) not in canonical order")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def L(self) -> int:
        return len(self.edges)

    @property
    def norm_weights(self) -> dict[tuple[str, str], float]:
        if not self.edges:
            return {}
        peak = max(self.edges.values())
        return {pair: raw / peak for pair, raw in self.edges.items()}

    def adjacency(
        self,
        universe: Iterable[str] | None = None,
        weights: str = "norm",
    ) -> np.ndarray:
        """Symmetric adjacency over ``universe`` (default: own vertices).

        Vertices absent from the slice appear as zero rows, which is how two
        networks are padded onto a shared index space. ``weights`` is one of
        ``norm``, ``raw``, ``binary``.
        """
        labels = tuple(universe) if universe is not None else self.vertices
        index = {name: i for i, name in enumerate(labels)}
        A = np.zeros((len(labels), len(labels)))
        if weights == "norm":
            values = self.norm_weights
        elif weights == "raw":
            values = {pair: float(raw) for pair, raw in self.edges.items()}
        elif weights == "binary":
            values = {pair: 1.0 for pair in self.edges}
        else:
            raise ValueError(f"unknown weight scheme {weights!r}")
        for (a, b), w in values.items():
            if a in index and b in index:
                A[index[a], index[b]] = w
                A[index[b], index[a]] = w
        return A

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        norm = self.norm_weights
        for pair, raw in self.edges.items():
            G.add_edge(*pair, raw_weight=raw, weight=norm[pair], length=1.0 / norm[pair])
        return G


@dataclass(frozen=True)
class DynamicNetwork:
    mode: str
    unit_kind: UnitKind
    unit_ids: tuple[str, ...]
    slices: tuple[NetworkSlice, ...]
    medium: str = ""
    period_label: str = ""

    def __post_init__(self):
        if self.mode not in (INSTANT, CUMULATIVE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.unit_ids) != len(self.slices):
            raise ValueError("one slice per unit required")

    def __len__(self) -> int:
        return len(self.slices)


@dataclass(frozen=True)
class GraphStats:
    n: int
    L: int
    density: float
    mean_degree: float
    mean_path_length: float
    mean_clustering: float
    assortativity: float
    modularity: float

    def as_dict(self) -> dict[str, float]:
        return {
            "n": self.n,
            "L": self.L,
            "density": self.density,
            "mean_degree": self.mean_degree,
            "mean_path_length": self.mean_path_length,
            "mean_clustering": self.mean_clustering,
            "assortativity": self.assortativity,
            "modularity": self.modularity,
        }


def _make_slice(
    interactions: Mapping[tuple[str, str], int],
    covered: Iterable[str],
    charset: set[str] | None,
    appearing: set[str],
    include_isolates: bool = False,
    isolate_pool: Iterable[str] = (),
) -> NetworkSlice:
    edges = {}
    for (a, b), count in interactions.items():
        if charset is None or (a in charset and b in charset):
            edges[(a, b)] = count
    vertices = set(appearing) if charset is None else appearing & charset
    if include_isolates:
        vertices |= set(isolate_pool)
    return NetworkSlice(tuple(sorted(vertices)), edges, frozenset(covered))


def _tally(records) -> tuple[dict[tuple[str, str], int], set[str]]:
    weights: dict[tuple[str, str], int] = {}
    appearing: set[str] = set()
    for rec in records:
        pair = (rec.char_a, rec.char_b)
        weights[pair] = weights.get(pair, 0) + rec.count
        appearing.add(rec.char_a)
        appearing.add(rec.char_b)
    return weights, appearing


def build_static(
    corpus: Corpus,
    medium: str,
    period: PeriodSpec | None,
    charset: Iterable[str] | None = None,
    include_isolates: bool = False,
) -> NetworkSlice:
    """Integrate all interactions of a medium over a period into one graph.

    Vertices are the characters that appear in the period (intersected with
    ``charset`` when given); characters of the charset that never appear are
    included as isolates only with ``include_isolates``.
    """
    kind = corpus.finest_kind(medium)
    units = corpus.units_in_period(medium, kind, period)
    if not units:
        label = period.label if period else "<all>"
        raise CorpusError([f"no units for medium {medium!r} in period {label!r}"])
    records = [rec for u in units for rec in corpus.interactions_of_unit(u.id)]
    weights, appearing = _tally(records)
    charset_set = set(charset) if charset is not None else None
    return _make_slice(
        weights,
        (u.id for u in units),
        charset_set,
        appearing,
        include_isolates,
        charset_set or (),
    )


def _collect_unit_records(corpus: Corpus, medium: str, unit_kind: UnitKind, units):
    """Group finest-kind interaction records under each requested unit."""
    finest = corpus.finest_kind(medium)
    if unit_kind == finest:
        return [(u, corpus.interactions_of_unit(u.id)) for u in units]
    # the requested kind must be an ancestor of the annotated kind
    by_ancestor: dict[str, list] = {u.id: [] for u in units}
    linked = False
    for fine_unit in corpus.units_of(medium, finest):
        ancestor = _ancestor_of_kind(corpus, fine_unit, unit_kind)
        if ancestor is None:
            continue
        linked = True
        if ancestor.id in by_ancestor:
            by_ancestor[ancestor.id].extend(corpus.interactions_of_unit(fine_unit.id))
    if not linked:
        raise CorpusError(
            [f"unit kind {unit_kind.value!r} unavailable for medium {medium!r}"]
        )
    return [(u, by_ancestor[u.id]) for u in units]


def _ancestor_of_kind(corpus: Corpus, unit: NarrativeUnit, kind: UnitKind):
    if unit.kind == kind:
        return unit
    current = unit
    seen = set()
    while current.parent_ids and current.id not in seen:
        seen.add(current.id)
        if kind in current.parent_ids:
            return corpus.units.get(current.parent_ids[kind])
        parent_id = next(
            current.parent_ids[k]
            for k in sorted(current.parent_ids, key=lambda k: k.value)
        )
        parent = corpus.units.get(parent_id)
        if parent is None:
            return None
        if parent.kind == kind:
            return parent
        current = parent
    return None


def build_dynamic(
    corpus: Corpus,
    medium: str,
    unit_kind: UnitKind,
    period: PeriodSpec | None,
    charset: Iterable[str] | None = None,
    mode: str = INSTANT,
) -> DynamicNetwork:
    """Build one time slice per unit of ``unit_kind``, in ordinal order.

    In cumulative mode, slice *t* carries the element-wise sum of the raw
    weights of instant slices 0..t, and its vertex set is their union.
    """
    units = corpus.units_in_period(medium, unit_kind, period)
    if not units:
        raise CorpusError(
            [f"unit kind {unit_kind.value!r} unavailable for medium {medium!r}"]
        )
    charset_set = set(charset) if charset is not None else None
    grouped = _collect_unit_records(corpus, medium, unit_kind, units)

    slices = []
    running: dict[tuple[str, str], int] = {}
    running_appearing: set[str] = set()
    running_units: set[str] = set()
    for unit, records in grouped:
        weights, appearing = _tally(records)
        if mode == INSTANT:
            slices.append(
                _make_slice(weights, {unit.id}, charset_set, appearing)
            )
        elif mode == CUMULATIVE:
            for pair, count in weights.items():
                running[pair] = running.get(pair, 0) + count
            running_appearing |= appearing
            running_units.add(unit.id)
            slices.append(
                _make_slice(
                    dict(running), set(running_units), charset_set, set(running_appearing)
                )
            )
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return DynamicNetwork(
        mode=mode,
        unit_kind=unit_kind,
        unit_ids=tuple(u.id for u in units),
        slices=tuple(slices),
        medium=medium,
        period_label=period.label if period else "",
    )


def segment_blocks(corpus: Corpus, tv_medium: str) -> Corpus:
    """Derive block units from maximal same-location scene runs.

    Two contiguous scenes belong to the same block when they share a location
    and an episode; a block never spans episodes. Scenes without a location
    get singleton blocks (with a warning). Returns a new corpus in which each
    scene carries a block parent link.
    """
    scenes = corpus.units_of(tv_medium, UnitKind.SCENE)
    if not scenes:
        raise CorpusError([f"medium {tv_medium!r} has no scene units"])

    def episode_of(scene: NarrativeUnit) -> str:
        if UnitKind.EPISODE in scene.parent_ids:
            return scene.parent_ids[UnitKind.EPISODE]
        return corpus.top_level_of(scene.id).id

    new_units: list[NarrativeUnit] = [
        u for u in corpus.units.values() if not (u.medium == tv_medium and u.kind == UnitKind.SCENE)
    ]
    block_ordinal = 0
    for scene in scenes:
        if scene.location is None:
            warnings.warn(
                f"scene {scene.id!r} has no location; assigned a singleton block",
                stacklevel=2,
            )

    def run_key(scene: NarrativeUnit):
        # a missing location never extends a run
        loc = scene.location if scene.location is not None else object()
        return (episode_of(scene), loc)

    for _, run in groupby(scenes, key=run_key):
        run = list(run)
        first = run[0]
        block_id = f"{tv_medium}:block:{block_ordinal}"
        if block_id in corpus.units:
            raise CorpusError([f"generated block id {block_id!r} already exists"])
        parents = dict(first.parent_ids)
        new_units.append(
            NarrativeUnit(
                id=block_id,
                medium=tv_medium,
                kind=UnitKind.BLOCK,
                ordinal=block_ordinal,
                parent_ids=parents,
                location=first.location,
            )
        )
        for scene in run:
            scene_parents = dict(scene.parent_ids)
            scene_parents[UnitKind.BLOCK] = block_id
            new_units.append(
                NarrativeUnit(
                    id=scene.id,
                    medium=scene.medium,
                    kind=scene.kind,
                    ordinal=scene.ordinal,
                    parent_ids=scene_parents,
                    location=scene.location,
                )
            )
        block_ordinal += 1

    return Corpus(
        corpus.characters.values(),
        new_units,
        corpus.interactions,
        corpus.periods.values(),
        aliases={a: c for a, c in corpus._alias_map.items() if a != c},
        strict=False,
    )


def compute_stats(network: NetworkSlice) -> GraphStats:
    """Standard descriptive topology statistics of one network.

    Path lengths are unweighted hops averaged over the largest connected
    component; clustering counts degree-below-2 vertices as 0; assortativity
    is the Pearson correlation of degrees over edge endpoints; modularity is
    that of a greedy agglomerative partition of the unweighted graph.
    """
    n, L = network.n, network.L
    if n < 2:
        return GraphStats(n, L, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    G = network.to_networkx()
    density = 2 * L / (n * (n - 1))
    mean_degree = 2 * L / n
    if L == 0:
        return GraphStats(n, L, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    components = sorted(nx.connected_components(G), key=lambda c: (-len(c), min(c)))
    giant = G.subgraph(components[0])
    mean_path = (
        nx.average_shortest_path_length(giant) if giant.number_of_nodes() > 1 else 0.0
    )
    mean_clustering = nx.average_clustering(G, count_zeros=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        assortativity = nx.degree_assortativity_coefficient(G)
    if not np.isfinite(assortativity):
        assortativity = 0.0
    communities = nx.algorithms.community.greedy_modularity_communities(G)
    modularity = nx.algorithms.community.modularity(G, communities)
    return GraphStats(
        n,
        L,
        float(density),
        float(mean_degree),
        float(mean_path),
        float(mean_clustering),
        float(assortativity),
        float(modularity),
    )


def export_slice(network: NetworkSlice, path: str | Path, metadata: dict | None = None):
    """Write an edge-list CSV plus a sidecar JSON with slice metadata."""
    path = Path(path)
    norm = network.norm_weights
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["char_a", "char_b", "raw_weight", "norm_weight"])
        for pair in sorted(network.edges):
            writer.writerow([pair[0], pair[1], network.edges[pair], f"{norm[pair]:.10g}"])
    sidecar = {
        "vertices": list(network.vertices),
        "covered_units": sorted(network.covered_units),
    }
    if metadata:
        sidecar.update(metadata)
    path.with_suffix(".json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
