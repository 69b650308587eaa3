"""Network construction, block segmentation, and topology statistics."""

from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np
import pytest

from storymatch.corpus import (
    CharacterRecord,
    Corpus,
    CorpusError,
    InteractionRecord,
    NarrativeUnit,
    PeriodSpec,
    UnitKind,
)
from storymatch.networks import (
    CUMULATIVE,
    INSTANT,
    NetworkSlice,
    build_dynamic,
    build_static,
    compute_stats,
    segment_blocks,
)

from conftest import BEATS, random_corpus


def single_unit_corpus(count: int = 3) -> Corpus:
    return Corpus(
        [CharacterRecord("A"), CharacterRecord("B")],
        [
            NarrativeUnit("t0", "m", UnitKind.TOP_LEVEL, 0),
            NarrativeUnit("c0", "m", UnitKind.CHAPTER, 0, {UnitKind.TOP_LEVEL: "t0"}),
        ],
        [InteractionRecord("c0", "A", "B", count)],
        [PeriodSpec("P", {"m": (0, 0)})],
    )


class TestBuildStatic:
    def test_single_edge_normalization(self):
        corpus = single_unit_corpus(count=3)
        net = build_static(corpus, "m", corpus.period("P"))
        assert net.edges == {("A", "B"): 3}
        assert net.norm_weights == {("A", "B"): 1.0}

    def test_recount_oracle_on_toy(self, toy_corpus):
        net = build_static(toy_corpus, "novels", toy_corpus.period("U2"))
        expected: dict[tuple[str, str], int] = {}
        for beat in BEATS:
            for a, b, count in beat:
                pair = (a, b) if a < b else (b, a)
                expected[pair] = expected.get(pair, 0) + count
        assert dict(net.edges) == expected
        assert set(net.vertices) == {c for pair in expected for c in pair}

    def test_charset_restriction_and_isolates(self, toy_corpus):
        period = toy_corpus.period("U2")
        charset = ["Aria", "Bren", "Hale"]
        net = build_static(toy_corpus, "novels", period, charset)
        assert set(net.vertices) == {"Aria", "Bren", "Hale"}
        assert all(a in charset and b in charset for a, b in net.edges)
        with_isolates = build_static(
            toy_corpus, "tvshow", period, ["Aria", "Bren", "Hale"], include_isolates=True
        )
        # Hale never appears in the toy tv show
        assert "Hale" in with_isolates.vertices
        without = build_static(toy_corpus, "tvshow", period, ["Aria", "Bren", "Hale"])
        assert "Hale" not in without.vertices

    def test_max_norm_weight_is_one(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            corpus = random_corpus(rng)
            net = build_static(corpus, "novels", corpus.period("ALL"))
            if net.edges:
                assert max(net.norm_weights.values()) == 1.0

    def test_empty_period_errors(self):
        corpus = Corpus(
            [CharacterRecord("A"), CharacterRecord("B")],
            [
                NarrativeUnit("t0", "m", UnitKind.TOP_LEVEL, 0),
                NarrativeUnit("t1", "m", UnitKind.TOP_LEVEL, 1),
                NarrativeUnit("c0", "m", UnitKind.CHAPTER, 0, {UnitKind.TOP_LEVEL: "t0"}),
            ],
            [InteractionRecord("c0", "A", "B")],
            [PeriodSpec("E", {"m": (1, 1)})],
        )
        with pytest.raises(CorpusError, match="no units"):
            build_static(corpus, "m", corpus.period("E"))


class TestBuildDynamic:
    def test_slice_count_and_aggregation(self, toy_corpus):
        period = toy_corpus.period("U2")
        dyn = build_dynamic(toy_corpus, "comics", UnitKind.CHAPTER, period, mode=INSTANT)
        assert len(dyn) == 6
        # chapter slices aggregate their two scenes
        scenes = build_dynamic(toy_corpus, "comics", UnitKind.SCENE, period, mode=INSTANT)
        for c in range(6):
            merged: dict[tuple[str, str], int] = {}
            for s in (2 * c, 2 * c + 1):
                for pair, raw in scenes.slices[s].edges.items():
                    merged[pair] = merged.get(pair, 0) + raw
            assert dict(dyn.slices[c].edges) == merged

    def test_cumulative_last_equals_static(self, toy_corpus):
        period = toy_corpus.period("U2")
        dyn = build_dynamic(
            toy_corpus, "novels", UnitKind.CHAPTER, period, mode=CUMULATIVE
        )
        static = build_static(toy_corpus, "novels", period)
        assert dict(dyn.slices[-1].edges) == dict(static.edges)
        assert dyn.slices[-1].vertices == static.vertices

    def test_cumulative_is_running_sum(self):
        rng = np.random.default_rng(21)
        corpus = random_corpus(rng)
        period = corpus.period("ALL")
        instant = build_dynamic(corpus, "novels", UnitKind.CHAPTER, period, mode=INSTANT)
        cumulative = build_dynamic(
            corpus, "novels", UnitKind.CHAPTER, period, mode=CUMULATIVE
        )
        running: dict[tuple[str, str], int] = {}
        for t, inst in enumerate(instant.slices):
            for pair, raw in inst.edges.items():
                running[pair] = running.get(pair, 0) + raw
            assert dict(cumulative.slices[t].edges) == running

    def test_instant_partitions_period_interactions(self, toy_corpus):
        period = toy_corpus.period("U2")
        instant = build_dynamic(
            toy_corpus, "tvshow", UnitKind.SCENE, period, mode=INSTANT
        )
        static = build_static(toy_corpus, "tvshow", period)
        summed: dict[tuple[str, str], int] = {}
        for network in instant.slices:
            for pair, raw in network.edges.items():
                summed[pair] = summed.get(pair, 0) + raw
        assert summed == dict(static.edges)

    def test_unavailable_kind_errors(self, toy_corpus):
        with pytest.raises(CorpusError, match="unavailable"):
            build_dynamic(
                toy_corpus, "novels", UnitKind.SCENE, toy_corpus.period("U2")
            )


class TestSegmentBlocks:
    def test_toy_block_runs(self, toy_corpus):
        # per episode locations: (N,N,S), (S,S,E), (E,N,N), (E,E,E) -> 7 blocks
        corpus = segment_blocks(toy_corpus, "tvshow")
        blocks = corpus.units_of("tvshow", UnitKind.BLOCK)
        assert len(blocks) == 7
        scenes = corpus.units_of("tvshow", UnitKind.SCENE)
        assert all(UnitKind.BLOCK in s.parent_ids for s in scenes)

    def test_runs_never_span_episodes(self, toy_corpus):
        corpus = segment_blocks(toy_corpus, "tvshow")
        for block in corpus.units_of("tvshow", UnitKind.BLOCK):
            episodes = {
                s.parent_ids[UnitKind.EPISODE]
                for s in corpus.units_of("tvshow", UnitKind.SCENE)
                if s.parent_ids.get(UnitKind.BLOCK) == block.id
            }
            assert len(episodes) == 1

    def test_single_location_episode_single_block(self):
        corpus = _scene_corpus(["X", "X", "X"])
        segmented = segment_blocks(corpus, "tv")
        assert len(segmented.units_of("tv", UnitKind.BLOCK)) == 1

    def test_aba_runs(self):
        corpus = _scene_corpus(["A", "A", "B", "A"])
        segmented = segment_blocks(corpus, "tv")
        blocks = segmented.units_of("tv", UnitKind.BLOCK)
        assert len(blocks) == 3

    def test_missing_location_singleton_with_warning(self):
        corpus = _scene_corpus(["A", None, None, "A"])
        with pytest.warns(UserWarning, match="no location"):
            segmented = segment_blocks(corpus, "tv")
        assert len(segmented.units_of("tv", UnitKind.BLOCK)) == 4

    def test_blocks_partition_scenes(self, toy_corpus):
        corpus = segment_blocks(toy_corpus, "tvshow")
        seen: list[str] = []
        for scene in corpus.units_of("tvshow", UnitKind.SCENE):
            seen.append(scene.parent_ids[UnitKind.BLOCK])
        block_ids = {b.id for b in corpus.units_of("tvshow", UnitKind.BLOCK)}
        assert set(seen) == block_ids

    def test_block_level_dynamic_builds(self, toy_corpus):
        corpus = segment_blocks(toy_corpus, "tvshow")
        dyn = build_dynamic(
            corpus, "tvshow", UnitKind.BLOCK, corpus.period("U2"), mode=INSTANT
        )
        assert len(dyn) == 7


def _scene_corpus(locations) -> Corpus:
    units = [
        NarrativeUnit("s0", "tv", UnitKind.TOP_LEVEL, 0),
        NarrativeUnit("e0", "tv", UnitKind.EPISODE, 0, {UnitKind.TOP_LEVEL: "s0"}),
    ]
    for k, loc in enumerate(locations):
        units.append(
            NarrativeUnit(
                f"sc{k}", "tv", UnitKind.SCENE, k, {UnitKind.EPISODE: "e0"}, location=loc
            )
        )
    interactions = [InteractionRecord("sc0", "A", "B")]
    return Corpus(
        [CharacterRecord("A"), CharacterRecord("B")],
        units,
        interactions,
        [PeriodSpec("P", {"tv": (0, 0)})],
    )


def _bfs_distances(adjacency: dict[str, set[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for neighbour in adjacency[node]:
            if neighbour not in dist:
                dist[neighbour] = dist[node] + 1
                queue.append(neighbour)
    return dist


class TestComputeStats:
    def test_triangle(self):
        net = NetworkSlice(
            ("a", "b", "c"), {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1}
        )
        stats = compute_stats(net)
        assert stats.density == 1.0
        assert stats.mean_degree == 2.0
        assert stats.mean_path_length == 1.0
        assert stats.mean_clustering == 1.0
        assert stats.modularity == pytest.approx(0.0)

    def test_edgeless(self):
        net = NetworkSlice(("a", "b", "c"), {})
        stats = compute_stats(net)
        assert stats.density == 0.0
        assert stats.mean_degree == 0.0

    def test_tiny_graph(self):
        stats = compute_stats(NetworkSlice(("a",), {}))
        assert (stats.n, stats.L) == (1, 0)
        assert stats.density == 0.0

    def test_brute_force_paths_and_clustering(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            names = tuple(f"v{i}" for i in range(8))
            edges = {}
            for a, b in combinations(names, 2):
                if rng.random() < 0.35:
                    edges[(a, b)] = int(rng.integers(1, 4))
            if not edges:
                continue
            net = NetworkSlice(names, edges)
            stats = compute_stats(net)

            adjacency = {v: set() for v in names}
            for a, b in edges:
                adjacency[a].add(b)
                adjacency[b].add(a)

            # largest component, ties by smallest member
            remaining = set(names)
            components = []
            while remaining:
                start = min(remaining)
                comp = set(_bfs_distances(adjacency, start))
                comp &= remaining
                components.append(comp)
                remaining -= comp
            giant = sorted(components, key=lambda c: (-len(c), min(c)))[0]
            if len(giant) > 1:
                total, pairs = 0, 0
                for s in giant:
                    dist = _bfs_distances(adjacency, s)
                    for t in giant:
                        if t != s:
                            total += dist[t]
                            pairs += 1
                assert stats.mean_path_length == pytest.approx(total / pairs)

            coeffs = []
            for v in names:
                neigh = sorted(adjacency[v])
                k = len(neigh)
                if k < 2:
                    coeffs.append(0.0)
                    continue
                closed = sum(
                    1 for x, y in combinations(neigh, 2) if y in adjacency[x]
                )
                coeffs.append(2 * closed / (k * (k - 1)))
            assert stats.mean_clustering == pytest.approx(sum(coeffs) / len(coeffs))


class TestAdjacency:
    def test_universe_padding_and_weights(self):
        net = NetworkSlice(("a", "b"), {("a", "b"): 2})
        A = net.adjacency(("a", "b", "c"))
        assert A.shape == (3, 3)
        assert A[0, 1] == 1.0 and A[2].sum() == 0.0
        raw = net.adjacency(("a", "b"), weights="raw")
        assert raw[0, 1] == 2.0
        binary = net.adjacency(("a", "b"), weights="binary")
        assert binary[0, 1] == 1.0

    def test_slice_validation(self):
        with pytest.raises(ValueError, match="self-loop"):
            NetworkSlice(("a",), {("a", "a"): 1})
        with pytest.raises(ValueError, match="canonical order"):
            NetworkSlice(("a", "b"), {("b", "a"): 1})
