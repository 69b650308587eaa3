"""Batch command-line front end.

Subcommands: validate, build, match, centrality, align, tune. Every command
accepts ``--config file.json`` (explicit flags override file values) and
writes a resolved config snapshot next to its results, sufficient to replay
the run byte-identically. Results are written atomically.

Exit codes: 0 success, 1 validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import centrality as cent
from . import graph_match as gm
from . import narrative_align as na
from . import similarity_match as sm
from . import viz
from .corpus import CharsetKind, Corpus, CorpusError, compute_importance, load_corpus, select_characters
from .networks import (
    CUMULATIVE,
    INSTANT,
    UnitKind,
    build_dynamic,
    build_static,
    compute_stats,
    export_slice,
    segment_blocks,
)
from .networks import _ancestor_of_kind


class UsageError(Exception):
    pass


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_json(path: Path, payload) -> None:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, rows) -> None:
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer)
    for row in rows:
        writer.writerow(row)
    _atomic_write(path, buffer.getvalue())


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags."""
    merged = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        loaded = json.loads(Path(config_path).read_text(encoding="utf-8"))
        for key, value in loaded.items():
            if key not in defaults and key != "command":
                raise UsageError(f"unknown config key {key!r}")
            if key != "command":
                merged[key] = value
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _outdir(cfg: dict) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _kind(name: str) -> UnitKind:
    for kind in UnitKind:
        if kind.value.lower() == name.lower():
            return kind
    raise UsageError(f"unknown unit kind {name!r}")


def _load(cfg: dict, need_blocks: bool = False, blocks_medium: str | None = None) -> Corpus:
    corpus = load_corpus(cfg["data"], strict=cfg.get("strict", True))
    if need_blocks or cfg.get("segment_blocks"):
        medium = cfg.get("blocks_medium") or blocks_medium or _guess_tv_medium(corpus)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            corpus = segment_blocks(corpus, medium)
    return corpus


def _guess_tv_medium(corpus: Corpus) -> str:
    with_scenes = [
        m for m in corpus.media if corpus.units_of(m, UnitKind.SCENE)
    ]
    if len(with_scenes) != 1:
        raise UsageError("specify blocks_medium; cannot guess the scene-based medium")
    return with_scenes[0]


def _charset(corpus: Corpus, cfg: dict, media: list[str]) -> list[str]:
    kind = CharsetKind(cfg.get("charset", "common"))
    period = corpus.period(cfg["period"])
    importance = None
    k = cfg.get("k")
    if kind is CharsetKind.TOP_K:
        importance = compute_importance(corpus, media, period)
        if k is None:
            k = 20
    return select_characters(
        corpus, kind, media, period, importance=importance, k=k,
        extra=cfg.get("extra_characters") or (),
    )


def _emit_config(out: Path, command: str, cfg: dict) -> None:
    payload = {"command": command}
    payload.update(cfg)
    _write_json(out / "config.json", payload)


# -- validate ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    cfg = _merge_config(args, {"data": None, "strict": True})
    if not cfg["data"]:
        raise UsageError("--data is required")
    try:
        corpus = load_corpus(cfg["data"], strict=cfg["strict"])
    except CorpusError as exc:
        for problem in exc.errors:
            print(f"error: {problem}", file=sys.stderr)
        return 1
    print(f"characters: {len(corpus.characters)}")
    print(f"interactions: {len(corpus.interactions)}")
    for medium in corpus.media:
        kinds = [
            f"{kind.value}={len(corpus.units_of(medium, kind))}"
            for kind in UnitKind
            if corpus.units_of(medium, kind)
        ]
        print(f"{medium}: {' '.join(kinds)}")
    for label in sorted(corpus.periods):
        print(f"period {label}: {corpus.periods[label].ranges}")
    return 0


# -- build ------------------------------------------------------------------------

_BUILD_DEFAULTS = {
    "data": None,
    "medium": None,
    "period": None,
    "kind": None,
    "mode": "static",
    "charset": "all",
    "media": None,
    "k": None,
    "extra_characters": None,
    "include_isolates": False,
    "segment_blocks": False,
    "blocks_medium": None,
    "strict": True,
    "out": "out",
}


def cmd_build(args) -> int:
    cfg = _merge_config(args, _BUILD_DEFAULTS)
    for key in ("data", "medium", "period"):
        if not cfg[key]:
            raise UsageError(f"--{key} is required")
    needs_blocks = cfg["segment_blocks"] or (cfg["kind"] or "").lower() == "block"
    corpus = _load(cfg, need_blocks=needs_blocks, blocks_medium=cfg["medium"])
    period = corpus.period(cfg["period"])
    media = cfg["media"] or [cfg["medium"]]
    charset = None
    if cfg["charset"] != "all" or cfg["media"]:
        charset = _charset(corpus, cfg, media)
    out = _outdir(cfg)

    if cfg["mode"] == "static":
        network = build_static(
            corpus, cfg["medium"], period, charset, cfg["include_isolates"]
        )
        export_slice(
            network,
            out / "network.csv",
            {"mode": "static", "medium": cfg["medium"], "period": cfg["period"]},
        )
        stats = compute_stats(network)
        _write_json(out / "stats.json", {k: _round(v) for k, v in stats.as_dict().items()})
        print(
            f"n={stats.n} L={stats.L} density={stats.density:.3f} "
            f"mean_degree={stats.mean_degree:.2f} mean_path={stats.mean_path_length:.2f} "
            f"clustering={stats.mean_clustering:.2f} assortativity={stats.assortativity:.2f} "
            f"modularity={stats.modularity:.2f}"
        )
    else:
        kind = _kind(cfg["kind"]) if cfg["kind"] else corpus.finest_kind(cfg["medium"])
        dyn = build_dynamic(corpus, cfg["medium"], kind, period, charset, cfg["mode"])
        slices_dir = out / "slices"
        slices_dir.mkdir(exist_ok=True)
        for idx, (unit_id, network) in enumerate(zip(dyn.unit_ids, dyn.slices)):
            export_slice(
                network,
                slices_dir / f"slice_{idx:04d}.csv",
                {
                    "mode": dyn.mode,
                    "unit_kind": dyn.unit_kind.value,
                    "unit_id": unit_id,
                },
            )
        print(f"slices={len(dyn)} kind={kind.value} mode={dyn.mode}")
    _emit_config(out, "build", cfg)
    return 0


def _round(v, digits: int = 10):
    if isinstance(v, float):
        return round(v, digits)
    return v


# -- match ------------------------------------------------------------------------

_MATCH_DEFAULTS = {
    "data": None,
    "media": None,
    "period": None,
    "charset": "common",
    "k": None,
    "extra_characters": None,
    "method": "indefinite",
    "weights": "norm",
    "centre": False,
    "seeds": 0,
    "seeds_file": None,
    "adaptive": None,
    "rounds": 1,
    "seeds_per_round": 5,
    "attributes": None,
    "prior_weight": 1.0,
    "mark_threshold": 2,
    "max_iter": 50,
    "mode": INSTANT,
    "kinds": None,
    "seed": None,
    "correspondence": None,
    "strict": True,
    "out": "out",
    "viz": False,
}


def cmd_match(args) -> int:
    cfg = _merge_config(args, _MATCH_DEFAULTS)
    for key in ("data", "media", "period"):
        if not cfg[key]:
            raise UsageError(f"--{key} is required")
    media = list(cfg["media"])
    if len(media) != 2:
        raise UsageError("--media needs exactly two media")
    corpus = _load(cfg)
    period = corpus.period(cfg["period"])
    charset_kind = CharsetKind(cfg["charset"])
    importance = compute_importance(corpus, media, period)
    charset = _charset(corpus, cfg, media)
    out = _outdir(cfg)

    if cfg["method"] in ("similarity", "sequential"):
        matching, accuracy = _similarity_match(corpus, cfg, media, period, charset, out)
    else:
        G1 = build_static(corpus, media[0], period, charset)
        G2 = build_static(corpus, media[1], period, charset)
        if charset_kind in (CharsetKind.NAMED, CharsetKind.ALL):
            # vertex sets differ between media: pad with isolates
            problem = gm.pad_graphs(G1, G2, cfg["weights"])
        else:
            problem = gm.problem_from_slices(G1, G2, charset, cfg["weights"])
        if cfg["centre"]:
            problem = gm.MatchProblem(
                gm.centre_adjacency(problem.A),
                gm.centre_adjacency(problem.B),
                problem.labels1,
                problem.labels2,
                padded=problem.padded,
                centred=True,
            )
        if cfg["attributes"]:
            attrs = set(cfg["attributes"])
            unknown = attrs - {"sex", "affiliation"}
            if unknown:
                raise UsageError(f"unknown attributes {sorted(unknown)}")
            records1 = [corpus.characters[c] for c in problem.labels1]
            records2 = [corpus.characters[c] for c in problem.labels2]
            prior = gm.attribute_prior(
                records1, records2, "sex" in attrs, "affiliation" in attrs
            )
            problem = problem.with_prior(prior)
        seeds = _resolve_seeds(cfg, problem, importance)
        if seeds:
            problem = problem.with_seeds(seeds)
        matching = _run_matcher(cfg, problem)
        truth = (
            gm.load_correspondence(cfg["correspondence"])
            if cfg["correspondence"]
            else None
        )
        accuracy = gm.evaluate_matching(matching, truth)

    gm.export_matching(matching, out / "matching.csv")
    _write_json(
        out / "result.json",
        {
            "accuracy_percent": f"{100 * accuracy:.2f}",
            "matched": len(matching),
            "method": matching.method,
        },
    )
    _emit_config(out, "match", cfg)
    print(f"{matching.method}: {100 * accuracy:.2f}% correct ({len(matching)} pairs)")
    return 0


def _resolve_seeds(cfg: dict, problem: gm.MatchProblem, importance):
    pairs: list[tuple[int, int]] = []
    names: list[str] = []
    if cfg["seeds_file"]:
        with open(cfg["seeds_file"], encoding="utf-8") as handle:
            names = [line.strip() for line in handle if line.strip()]
    elif cfg["seeds"]:
        ranked = [c for c in importance.ranked() if c in problem.labels1 and c in problem.labels2]
        names = ranked[: cfg["seeds"]]
    elif cfg["method"] == "percolation":
        ranked = [c for c in importance.ranked() if c in problem.labels1 and c in problem.labels2]
        names = ranked[:1]
    for name in names:
        if name not in problem.labels1 or name not in problem.labels2:
            raise UsageError(f"seed character {name!r} missing from a network")
        pairs.append((problem.labels1.index(name), problem.labels2.index(name)))
    return pairs


def _run_matcher(cfg: dict, problem: gm.MatchProblem) -> gm.Matching:
    method = cfg["method"]
    base_kwargs = {}
    if method in (gm.CONVEX, gm.INDEFINITE, gm.CONCAVE):
        base_kwargs = {
            "max_iter": cfg["max_iter"],
            "prior_weight": cfg["prior_weight"],
        }
    elif method == "percolation":
        base_kwargs = {"r": cfg["mark_threshold"]}
    elif method == "umeyama":
        base_kwargs = {"prior_weight": cfg["prior_weight"]}
    else:
        raise UsageError(f"unknown method {method!r}")
    if cfg["adaptive"]:
        return gm.match_adaptive(
            problem,
            method,
            seed_mode=cfg["adaptive"],
            rounds=cfg["rounds"],
            seeds_per_round=cfg["seeds_per_round"],
            **base_kwargs,
        )
    if method in (gm.CONVEX, gm.INDEFINITE, gm.CONCAVE):
        return gm.match_relax(problem, objective=method, **base_kwargs)
    if method == "percolation":
        return gm.match_percolation(problem, **base_kwargs)
    return gm.match_umeyama(problem, **base_kwargs)


def _similarity_match(corpus, cfg, media, period, charset, out):
    truth = (
        gm.load_correspondence(cfg["correspondence"]) if cfg["correspondence"] else None
    )
    if cfg["method"] == "similarity":
        G1 = build_static(corpus, media[0], period, charset)
        G2 = build_static(corpus, media[1], period, charset)
        sim = sm.neighborhood_similarity(G1, G2, charset)
        if cfg["viz"]:
            viz.write_pgm(sim.values, out / "similarity.pgm")
        sm.export_similarity_csv(sim, out / "similarity.csv")
        matching = sm.mutual_best_match(sim)
    else:
        if cfg["kinds"]:
            kind1, kind2 = (_kind(k) for k in cfg["kinds"])
        else:
            kind1 = corpus.finest_kind(media[0])
            kind2 = corpus.finest_kind(media[1])
        mode = cfg.get("mode") or INSTANT
        dyn1 = build_dynamic(corpus, media[0], kind1, period, charset, mode)
        dyn2 = build_dynamic(corpus, media[1], kind2, period, charset, mode)
        rng = np.random.default_rng(cfg["seed"]) if cfg["seed"] is not None else None
        matching = sm.sequential_match(dyn1, dyn2, charset, rng=rng)
    return matching, gm.evaluate_matching(matching, truth, universe=charset)


# -- centrality ---------------------------------------------------------------------

_CENTRALITY_DEFAULTS = {
    "data": None,
    "media": None,
    "period": None,
    "charset": "common",
    "k": None,
    "extra_characters": None,
    "clusters": None,
    "linkage": "average",
    "strict": True,
    "out": "out",
}


def cmd_centrality(args) -> int:
    cfg = _merge_config(args, _CENTRALITY_DEFAULTS)
    for key in ("data", "media", "period"):
        if not cfg[key]:
            raise UsageError(f"--{key} is required")
    media = list(cfg["media"])
    corpus = _load(cfg)
    period = corpus.period(cfg["period"])
    charset = _charset(corpus, cfg, media)
    out = _outdir(cfg)

    partitions = {}
    for medium in media:
        network = build_static(corpus, medium, period, charset, include_isolates=True)
        profiles = cent.compute_profiles(network, charset)
        cent.export_profiles(profiles, out / f"profiles_{medium}.csv")
        correlation = cent.spearman_matrix(profiles)
        cent.export_correlation(correlation, out / f"spearman_{medium}.csv")
        partition = cent.cluster_profiles(
            profiles, k=cfg["clusters"], linkage_method=cfg["linkage"]
        )
        cent.export_partition(partition, out / f"partition_{medium}.csv")
        partitions[medium] = partition
        print(f"{medium}: {len(set(partition.values()))} clusters over {len(partition)} characters")

    if len(media) > 1:
        rows = [["medium_a", "medium_b", "ari"]]
        for i, a in enumerate(media):
            for b in media[i + 1 :]:
                value = cent.ari(partitions[a], partitions[b])
                rows.append([a, b, f"{value:.10g}"])
                print(f"ari {a} vs {b}: {value:.2f}")
        _write_csv(out / "ari.csv", rows)
    _emit_config(out, "centrality", cfg)
    return 0


# -- align --------------------------------------------------------------------------

_ALIGN_DEFAULTS = {
    "data": None,
    "media": None,
    "period": None,
    "row_kind": None,
    "col_kind": None,
    "similarity": "structural",
    "representation": "vertices",
    "weighting": "jaccard",
    "charset": "common",
    "k": None,
    "extra_characters": None,
    "mode": INSTANT,
    "alpha": 0.5,
    "texts": None,
    "embeddings": None,
    "text_row_kind": None,
    "text_col_kind": None,
    "aligner": "smith-waterman",
    "threshold": 0.5,
    "gap": 0.2,
    "shift": 0.5,
    "min_segment": 1.0,
    "max_run": None,
    "gold": None,
    "eval_row_kind": None,
    "eval_col_kind": None,
    "per_window": False,
    "segment_blocks": False,
    "blocks_medium": None,
    "strict": True,
    "out": "out",
    "viz": False,
}


def _unit_index(corpus, medium, kind, period):
    units = corpus.units_in_period(medium, kind, period)
    return [u.id for u in units], {u.id: i for i, u in enumerate(units)}


def _kind_map(corpus, medium, fine_kind, coarse_kind, period):
    """Position of each fine unit's coarse ancestor, both within the period."""
    fine_units = corpus.units_in_period(medium, fine_kind, period)
    coarse_units = corpus.units_in_period(medium, coarse_kind, period)
    coarse_index = {u.id: i for i, u in enumerate(coarse_units)}
    mapping = []
    for unit in fine_units:
        ancestor = _ancestor_of_kind(corpus, unit, coarse_kind)
        if ancestor is None or ancestor.id not in coarse_index:
            raise UsageError(
                f"unit {unit.id!r} has no {coarse_kind.value} ancestor in the period"
            )
        mapping.append(coarse_index[ancestor.id])
    return mapping


def _text_units(corpus, medium, kind, period, source_path, use_embeddings):
    ids, _ = _unit_index(corpus, medium, kind, period)
    table = na.load_embeddings(source_path) if use_embeddings else na.load_summaries(source_path)
    missing = [u for u in ids if u not in table]
    if missing:
        raise UsageError(f"missing texts/embeddings for units {missing[:5]}")
    return [table[u] for u in ids]


def _build_similarity(corpus, cfg, media, period):
    row_kind = _kind(cfg["row_kind"])
    col_kind = _kind(cfg["col_kind"])
    charset = _charset(corpus, cfg, media)
    structural = None
    textual = None

    if cfg["similarity"] in ("structural", "hybrid"):
        dyn_a = build_dynamic(corpus, media[0], row_kind, period, charset, cfg["mode"])
        dyn_b = build_dynamic(corpus, media[1], col_kind, period, charset, cfg["mode"])
        structural = na.structural_similarity(
            dyn_a, dyn_b, cfg["representation"], cfg["weighting"], charset
        )

    if cfg["similarity"] in ("tfidf", "embedding", "hybrid"):
        text_row_kind = _kind(cfg["text_row_kind"] or cfg["row_kind"])
        text_col_kind = _kind(cfg["text_col_kind"] or cfg["col_kind"])
        use_embeddings = cfg["similarity"] == "embedding" or (
            cfg["similarity"] == "hybrid" and not cfg["texts"] and cfg["embeddings"]
        )
        paths = cfg["embeddings"] if use_embeddings else cfg["texts"]
        if not paths or len(paths) != 2:
            raise UsageError("textual similarity needs two text/embedding files")
        docs_a = _text_units(corpus, media[0], text_row_kind, period, paths[0], use_embeddings)
        docs_b = _text_units(corpus, media[1], text_col_kind, period, paths[1], use_embeddings)
        if use_embeddings:
            textual = na.embedding_similarity(docs_a, docs_b)
        else:
            textual = na.tfidf_similarity(docs_a, docs_b)
        if (text_row_kind, text_col_kind) != (row_kind, col_kind):
            row_map = _kind_map(corpus, media[0], row_kind, text_row_kind, period)
            col_map = _kind_map(corpus, media[1], col_kind, text_col_kind, period)
            textual = na.extend_matrix(textual, row_map, col_map)

    if cfg["similarity"] == "structural":
        S = structural
    elif cfg["similarity"] in ("tfidf", "embedding"):
        S = textual
    else:
        S = na.hybrid_combine(structural, textual, cfg["alpha"])
    row_ids, _ = _unit_index(corpus, media[0], row_kind, period)
    col_ids, _ = _unit_index(corpus, media[1], col_kind, period)
    if S.shape != (len(row_ids), len(col_ids)):
        raise UsageError(
            f"similarity shape {S.shape} does not match unit counts "
            f"({len(row_ids)}, {len(col_ids)})"
        )
    return S, row_ids, col_ids


def cmd_align(args) -> int:
    cfg = _merge_config(args, _ALIGN_DEFAULTS)
    for key in ("data", "media", "period", "row_kind", "col_kind"):
        if not cfg[key]:
            raise UsageError(f"--{key.replace('_', '-')} is required")
    media = list(cfg["media"])
    if len(media) != 2:
        raise UsageError("--media needs exactly two media")
    needs_blocks = cfg["segment_blocks"] or "block" in (
        cfg["row_kind"].lower(),
        cfg["col_kind"].lower(),
    )
    blocks_medium = None
    if needs_blocks:
        blocks_medium = media[0] if cfg["row_kind"].lower() == "block" else media[1]
    corpus = _load(cfg, need_blocks=needs_blocks, blocks_medium=blocks_medium)
    period = corpus.period(cfg["period"])
    S, row_ids, col_ids = _build_similarity(corpus, cfg, media, period)
    out = _outdir(cfg)

    if cfg["aligner"] == "threshold":
        M = na.align_threshold(na.minmax_normalize(S), cfg["threshold"])
    elif cfg["aligner"] == "smith-waterman":
        params = na.SWParams(
            gap=cfg["gap"],
            shift=cfg["shift"],
            min_segment_score=cfg["min_segment"],
            max_run=cfg["max_run"],
        )
        M = na.align_smith_waterman(S, params)
    else:
        raise UsageError(f"unknown aligner {cfg['aligner']!r}")

    na.export_alignment(M, row_ids, col_ids, out / "alignment.csv")
    result: dict[str, object] = {"matches": int(M.sum()), "shape": list(M.shape)}

    if cfg["gold"]:
        eval_row_kind = _kind(cfg["eval_row_kind"] or cfg["row_kind"])
        eval_col_kind = _kind(cfg["eval_col_kind"] or cfg["col_kind"])
        _, row_index = _unit_index(corpus, media[0], eval_row_kind, period)
        _, col_index = _unit_index(corpus, media[1], eval_col_kind, period)
        gold = na.load_gold(cfg["gold"], row_index, col_index)
        M_eval = M
        if (eval_row_kind.value, eval_col_kind.value) != (
            _kind(cfg["row_kind"]).value,
            _kind(cfg["col_kind"]).value,
        ):
            row_map = _kind_map(corpus, media[0], _kind(cfg["row_kind"]), eval_row_kind, period)
            col_map = _kind_map(corpus, media[1], _kind(cfg["col_kind"]), eval_col_kind, period)
            M_eval = na.coarsen_alignment(
                M, row_map, col_map, (len(row_index), len(col_index))
            )
        G = gold.to_matrix(M_eval.shape)
        score = na.evaluate_f1(M_eval, G)
        result.update(
            {
                "precision": na.percent(score.precision),
                "recall": na.percent(score.recall),
                "f1": na.percent(score.f1),
            }
        )
        print(
            f"precision={na.percent(score.precision)} recall={na.percent(score.recall)} "
            f"f1={na.percent(score.f1)}"
        )
        if cfg["per_window"]:
            units = corpus.units_in_period(media[1], eval_col_kind, period)
            windows = [corpus.top_level_of(u.id).ordinal for u in units]
            scores = na.per_window_f1(M_eval, G, windows)
            rows = [["window", "f1"]]
            for window in sorted(scores):
                rows.append([window, na.percent(scores[window])])
            _write_csv(out / "per_window.csv", rows)
        if cfg["viz"]:
            viz.write_alignment_pgm(M_eval, G, out / "alignment.pgm")
    elif cfg["viz"]:
        viz.write_pgm(na.minmax_normalize(S), out / "similarity.pgm")

    _write_json(out / "result.json", result)
    _emit_config(out, "align", cfg)
    if "f1" not in result:
        print(f"matches={int(M.sum())}")
    return 0


# -- tune ---------------------------------------------------------------------------

_TUNE_DEFAULTS = {
    "pairs": None,
    "target": None,
    "aligner": "smith-waterman",
    "hybrid": False,
    "out": "out",
}


def _build_dev_pair(entry, hybrid: bool) -> na.DevPair:
    pair_cfg = dict(_ALIGN_DEFAULTS)
    pair_cfg.update(entry["align"])
    media = list(pair_cfg["media"])
    needs_blocks = "block" in (
        str(pair_cfg["row_kind"]).lower(),
        str(pair_cfg["col_kind"]).lower(),
    )
    blocks_medium = None
    if needs_blocks:
        blocks_medium = (
            media[0] if str(pair_cfg["row_kind"]).lower() == "block" else media[1]
        )
    corpus = _load(pair_cfg, need_blocks=needs_blocks, blocks_medium=blocks_medium)
    period = corpus.period(pair_cfg["period"])
    text = None
    if hybrid:
        S, _, _ = _build_similarity(corpus, dict(pair_cfg, similarity="structural"), media, period)
        text_similarity = pair_cfg.get("text_similarity", "tfidf")
        text, _, _ = _build_similarity(corpus, dict(pair_cfg, similarity=text_similarity), media, period)
    else:
        S, _, _ = _build_similarity(corpus, pair_cfg, media, period)

    row_kind = _kind(pair_cfg["row_kind"])
    col_kind = _kind(pair_cfg["col_kind"])
    eval_row_kind = _kind(pair_cfg["eval_row_kind"] or pair_cfg["row_kind"])
    eval_col_kind = _kind(pair_cfg["eval_col_kind"] or pair_cfg["col_kind"])
    _, row_index = _unit_index(corpus, media[0], eval_row_kind, period)
    _, col_index = _unit_index(corpus, media[1], eval_col_kind, period)
    gold = na.load_gold(entry["gold"], row_index, col_index).to_matrix(
        (len(row_index), len(col_index))
    )
    row_map = col_map = None
    if (eval_row_kind, eval_col_kind) != (row_kind, col_kind):
        row_map = _kind_map(corpus, media[0], row_kind, eval_row_kind, period)
        col_map = _kind_map(corpus, media[1], col_kind, eval_col_kind, period)
    return na.DevPair(S, gold, text=text, row_map=row_map, col_map=col_map)


def cmd_tune(args) -> int:
    """Leave-one-pair-out tuning driven by a pairs config file.

    The pairs file is JSON: a list of objects with ``name``, ``align`` (the
    align-command parameters producing that pair's similarity matrix), and
    ``gold``. The target pair is excluded from the development set.
    """
    cfg = _merge_config(args, _TUNE_DEFAULTS)
    if not cfg["pairs"] or not cfg["target"]:
        raise UsageError("--pairs and --target are required")
    spec = json.loads(Path(cfg["pairs"]).read_text(encoding="utf-8"))
    by_name = {entry["name"]: entry for entry in spec}
    if cfg["target"] not in by_name:
        raise UsageError(f"target {cfg['target']!r} not in pairs file")

    dev = [
        _build_dev_pair(entry, cfg["hybrid"])
        for entry in spec
        if entry["name"] != cfg["target"]
    ]
    result = na.tune_params(dev, aligner=cfg["aligner"], hybrid=cfg["hybrid"])
    out = _outdir(cfg)
    payload = {
        "aligner": result.aligner,
        "mean_dev_f1": na.percent(result.mean_f1),
        "alpha": result.alpha,
    }
    if result.aligner == "smith-waterman":
        payload["params"] = {
            "gap": result.params.gap,
            "shift": result.params.shift,
            "min_segment_score": result.params.min_segment_score,
        }
    else:
        payload["params"] = {"threshold": result.params}
    _write_json(out / "tuned.json", payload)
    _emit_config(out, "tune", cfg)
    print(f"best {result.aligner} params: {payload['params']} mean dev F1 {payload['mean_dev_f1']}")
    return 0


# -- parser -------------------------------------------------------------------------


def _csv_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storymatch",
        description="Compare story adaptations through their character networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--out", help="output directory (default: out)")
        p.add_argument("--data", help="corpus directory with the annotation CSVs")
        p.add_argument("--lenient", dest="strict", action="store_const", const=False)

    p = sub.add_parser("validate", help="check corpus files and print counts")
    p.add_argument("data_pos", nargs="?", metavar="DATA")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="build networks and topology statistics")
    add_common(p)
    p.add_argument("--medium")
    p.add_argument("--period")
    p.add_argument("--kind")
    p.add_argument("--mode", choices=["static", INSTANT, CUMULATIVE])
    p.add_argument("--charset", choices=[k.value for k in CharsetKind])
    p.add_argument("--media", type=_csv_list)
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("--include-isolates", dest="include_isolates", action="store_const", const=True)
    p.add_argument("--segment-blocks", dest="segment_blocks", action="store_const", const=True)
    p.add_argument("--blocks-medium", dest="blocks_medium")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("match", help="match characters between two networks")
    add_common(p)
    p.add_argument("--media", type=_csv_list)
    p.add_argument("--period")
    p.add_argument("--charset", choices=[k.value for k in CharsetKind])
    p.add_argument("-k", type=int, dest="k")
    p.add_argument(
        "--method",
        choices=["convex", "indefinite", "concave", "percolation", "umeyama", "similarity", "sequential"],
    )
    p.add_argument("--weights", choices=["norm", "raw", "binary"])
    p.add_argument("--centre", action="store_const", const=True)
    p.add_argument("--seeds", type=int)
    p.add_argument("--seeds-file", dest="seeds_file")
    p.add_argument("--adaptive", choices=["hard", "soft"])
    p.add_argument("--rounds", type=int)
    p.add_argument("--seeds-per-round", dest="seeds_per_round", type=int)
    p.add_argument("--attributes", type=_csv_list)
    p.add_argument("--prior-weight", dest="prior_weight", type=float)
    p.add_argument("--mark-threshold", dest="mark_threshold", type=int)
    p.add_argument("--max-iter", dest="max_iter", type=int)
    p.add_argument("--mode", choices=[INSTANT, CUMULATIVE])
    p.add_argument("--kinds", type=_csv_list, help="unit kinds for sequential matching")
    p.add_argument("--seed", type=int, help="enable randomized tie-breaks (fidelity mode)")
    p.add_argument("--viz", action="store_const", const=True)
    p.add_argument("--correspondence")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("centrality", help="centrality profiles, correlations, clusters")
    add_common(p)
    p.add_argument("--media", type=_csv_list)
    p.add_argument("--period")
    p.add_argument("--charset", choices=[k.value for k in CharsetKind])
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("--clusters", type=int)
    p.add_argument("--linkage", choices=["average", "complete", "single", "ward"])
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("align", help="align narrative units of two adaptations")
    add_common(p)
    p.add_argument("--media", type=_csv_list)
    p.add_argument("--period")
    p.add_argument("--row-kind", dest="row_kind")
    p.add_argument("--col-kind", dest="col_kind")
    p.add_argument("--similarity", choices=["structural", "tfidf", "embedding", "hybrid"])
    p.add_argument("--representation", choices=[na.VERTICES, na.EDGES])
    p.add_argument("--weighting", choices=[na.JACCARD, na.RUZICKA_INVERSE])
    p.add_argument("--charset", choices=[k.value for k in CharsetKind])
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("--mode", choices=[INSTANT, CUMULATIVE])
    p.add_argument("--alpha", type=float)
    p.add_argument("--texts", type=_csv_list, help="two summaries.csv files (rows, cols)")
    p.add_argument("--embeddings", type=_csv_list, help="two embeddings.csv files")
    p.add_argument("--text-row-kind", dest="text_row_kind")
    p.add_argument("--text-col-kind", dest="text_col_kind")
    p.add_argument("--aligner", choices=["threshold", "smith-waterman"])
    p.add_argument("--threshold", type=float)
    p.add_argument("--gap", type=float)
    p.add_argument("--shift", type=float)
    p.add_argument("--min-segment", dest="min_segment", type=float)
    p.add_argument("--max-run", dest="max_run", type=int)
    p.add_argument("--gold")
    p.add_argument("--eval-row-kind", dest="eval_row_kind")
    p.add_argument("--eval-col-kind", dest="eval_col_kind")
    p.add_argument("--per-window", dest="per_window", action="store_const", const=True)
    p.add_argument("--segment-blocks", dest="segment_blocks", action="store_const", const=True)
    p.add_argument("--blocks-medium", dest="blocks_medium")
    p.add_argument("--viz", action="store_const", const=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("tune", help="leave-one-pair-out hyperparameter tuning")
    add_common(p)
    p.add_argument("--pairs", help="JSON file listing named pairs with align params and gold")
    p.add_argument("--target")
    p.add_argument("--aligner", choices=["threshold", "smith-waterman"])
    p.add_argument("--hybrid", action="store_const", const=True)
    p.set_defaults(func=cmd_tune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "validate" and getattr(args, "data_pos", None) and not args.data:
        args.data = args.data_pos
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CorpusError as exc:
        for problem in exc.errors:
            print(f"error: {problem}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
