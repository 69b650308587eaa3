"""Shared fixtures: a synthetic three-media corpus and random generators."""

from __future__ import annotations

import csv
import os
from pathlib import Path

import numpy as np
import pytest

from storymatch.corpus import (
    CharacterRecord,
    Corpus,
    InteractionRecord,
    NarrativeUnit,
    PeriodSpec,
    Sex,
    UnitKind,
)

# story beats shared by all three toy media; each beat is a list of
# (char_a, char_b, count)
BEATS = [
    [("Aria", "Bren", 2), ("Aria", "Gwen", 1)],
    [("Aria", "Bren", 1), ("Bren", "Gwen", 1)],
    [("Cass", "Dorn", 2), ("Dorn", "Hale", 1)],
    [("Cass", "Dorn", 1), ("Cass", "Hale", 1)],
    [("Elia", "Fenn", 2), ("Aria", "Elia", 1)],
    [("Elia", "Fenn", 1), ("Bren", "Fenn", 1), ("Aria", "Bren", 1)],
]

# the toy TV show drops Hale, the toy comics drop Gwen
_DROP = {"comics": {"Gwen"}, "tvshow": {"Hale"}}

TOY_CHARACTERS = [
    CharacterRecord("Aria", frozenset({"Ari"}), Sex.FEMALE, "North", True),
    CharacterRecord("Bren", frozenset({"Fat Bren"}), Sex.MALE, "North", True),
    CharacterRecord("Cass", frozenset(), Sex.FEMALE, "South", True),
    CharacterRecord("Dorn", frozenset(), Sex.MALE, "South", True),
    CharacterRecord("Elia", frozenset(), Sex.FEMALE, "East", True),
    CharacterRecord("Fenn", frozenset(), Sex.MALE, "East", True),
    CharacterRecord("Gwen", frozenset(), Sex.FEMALE, "North", True),
    CharacterRecord("Hale", frozenset(), Sex.MALE, "South", True),
    CharacterRecord("stable boy", frozenset(), Sex.MALE, "", False),
    CharacterRecord("merchant", frozenset(), Sex.UNKNOWN, "", False),
]

# location per TV scene; scene k belongs to beat k // 2
TV_LOCATIONS = [
    "North Keep", "North Keep", "South Hall",
    "South Hall", "South Hall", "East Port",
    "East Port", "North Keep", "North Keep",
    "East Port", "East Port", "East Port",
]


def _beat_interactions(medium: str, beat: int):
    dropped = _DROP.get(medium, set())
    return [
        (a, b, c)
        for a, b, c in BEATS[beat]
        if a not in dropped and b not in dropped
    ]


def build_toy_corpus() -> Corpus:
    units: list[NarrativeUnit] = []
    interactions: list[InteractionRecord] = []

    # novels: 2 books, 6 chapters, annotated at chapter level
    for b in range(2):
        units.append(NarrativeUnit(f"nb{b}", "novels", UnitKind.TOP_LEVEL, b))
    for c in range(6):
        book = f"nb{c // 3}"
        units.append(
            NarrativeUnit(
                f"nc{c}", "novels", UnitKind.CHAPTER, c, {UnitKind.TOP_LEVEL: book}
            )
        )
        for a, b, count in _beat_interactions("novels", c):
            interactions.append(InteractionRecord(f"nc{c}", a, b, count))

    # comics: 2 volumes, 3 issues, 6 chapters, 12 scenes, annotated at scenes
    for v in range(2):
        units.append(NarrativeUnit(f"cv{v}", "comics", UnitKind.TOP_LEVEL, v))
    issue_volume = [0, 0, 1]
    for i in range(3):
        units.append(
            NarrativeUnit(
                f"ci{i}", "comics", UnitKind.ISSUE, i,
                {UnitKind.TOP_LEVEL: f"cv{issue_volume[i]}"},
            )
        )
    for c in range(6):
        issue = f"ci{c // 2}"
        units.append(
            NarrativeUnit(
                f"cc{c}", "comics", UnitKind.CHAPTER, c, {UnitKind.ISSUE: issue}
            )
        )
    for s in range(12):
        chapter = f"cc{s // 2}"
        units.append(
            NarrativeUnit(
                f"cs{s}", "comics", UnitKind.SCENE, s, {UnitKind.CHAPTER: chapter}
            )
        )
        beat = s // 2
        rows = _beat_interactions("comics", beat)
        # spread the beat over its two scenes
        chosen = rows[s % 2 :: 2]
        for a, b, count in chosen:
            interactions.append(InteractionRecord(f"cs{s}", a, b, count))

    # tv show: 2 seasons, 4 episodes, 12 scenes with locations
    for s in range(2):
        units.append(NarrativeUnit(f"ts{s}", "tvshow", UnitKind.TOP_LEVEL, s))
    for e in range(4):
        units.append(
            NarrativeUnit(
                f"te{e}", "tvshow", UnitKind.EPISODE, e,
                {UnitKind.TOP_LEVEL: f"ts{e // 2}"},
            )
        )
    for s in range(12):
        episode = f"te{s // 3}"
        units.append(
            NarrativeUnit(
                f"tv{s}", "tvshow", UnitKind.SCENE, s,
                {UnitKind.EPISODE: episode},
                location=TV_LOCATIONS[s],
            )
        )
        beat = s // 2
        rows = _beat_interactions("tvshow", beat)
        chosen = rows[s % 2 :: 2]
        for a, b, count in chosen:
            interactions.append(InteractionRecord(f"tv{s}", a, b, count))
    # the unnamed pair appears only in the tv show
    interactions.append(InteractionRecord("tv11", "stable boy", "merchant", 1))

    periods = [
        PeriodSpec("U1", {"novels": (0, 0), "comics": (0, 0), "tvshow": (0, 0)}),
        PeriodSpec("U2", {"novels": (0, 1), "comics": (0, 1), "tvshow": (0, 1)}),
    ]
    aliases = {"Ari": "Aria", "Fat Bren": "Bren"}
    return Corpus(TOY_CHARACTERS, units, interactions, periods, aliases)


def write_toy_csvs(directory: Path) -> Path:
    """Serialise the toy corpus into the standard CSV files."""
    directory.mkdir(parents=True, exist_ok=True)
    corpus = build_toy_corpus()

    with open(directory / "characters.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["canonical_name", "sex", "affiliation", "named"])
        for rec in TOY_CHARACTERS:
            writer.writerow(
                [rec.canonical_name, rec.sex.value, rec.affiliation, str(rec.named).lower()]
            )
    with open(directory / "aliases.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alias", "canonical_name"])
        writer.writerow(["Ari", "Aria"])
        writer.writerow(["Fat Bren", "Bren"])
    with open(directory / "units.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "medium", "kind", "ordinal", "parent_ids", "location"])
        for unit in corpus.units.values():
            parents = ";".join(
                f"{kind.value}={uid}" for kind, uid in sorted(
                    unit.parent_ids.items(), key=lambda kv: kv[0].value
                )
            )
            writer.writerow(
                [unit.id, unit.medium, unit.kind.value, unit.ordinal, parents, unit.location or ""]
            )
    with open(directory / "interactions.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["unit_id", "char_a", "char_b", "count"])
        for rec in corpus.interactions:
            writer.writerow([rec.unit_id, rec.char_a, rec.char_b, rec.count])
    with open(directory / "periods.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "medium", "first_ordinal", "last_ordinal"])
        for label, period in sorted(corpus.periods.items()):
            for medium, (first, last) in sorted(period.ranges.items()):
                writer.writerow([label, medium, first, last])
    return directory


# gold toy alignment: novel chapter -> tv episode, by construction of the beats
TOY_GOLD_CHAPTER_EPISODE = [
    ("nc0", "te0"), ("nc1", "te0"), ("nc1", "te1"), ("nc2", "te1"),
    ("nc3", "te2"), ("nc4", "te2"), ("nc4", "te3"), ("nc5", "te3"),
]


def write_toy_gold(path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row:Chapter", "col:Episode"])
        for row_id, col_id in TOY_GOLD_CHAPTER_EPISODE:
            writer.writerow([row_id, col_id])
    return path


def random_corpus(rng: np.random.Generator, medium: str = "novels") -> Corpus:
    """A small random single-medium corpus for property tests."""
    n_chars = int(rng.integers(3, 8))
    names = [f"Char{k}" for k in range(n_chars)]
    characters = [CharacterRecord(n) for n in names]
    n_top = int(rng.integers(1, 3))
    n_units = int(rng.integers(2, 9))
    units = [NarrativeUnit(f"top{t}", medium, UnitKind.TOP_LEVEL, t) for t in range(n_top)]
    for u in range(n_units):
        top = f"top{int(rng.integers(0, n_top))}"
        units.append(
            NarrativeUnit(
                f"u{u}", medium, UnitKind.CHAPTER, u, {UnitKind.TOP_LEVEL: top}
            )
        )
    interactions = []
    for u in range(n_units):
        for _ in range(int(rng.integers(0, 6))):
            a, b = rng.choice(n_chars, size=2, replace=False)
            interactions.append(
                InteractionRecord(f"u{u}", names[a], names[b], int(rng.integers(1, 4)))
            )
    periods = [PeriodSpec("ALL", {medium: (0, n_top - 1)})]
    return Corpus(characters, units, interactions, periods)


@pytest.fixture
def toy_corpus() -> Corpus:
    return build_toy_corpus()


@pytest.fixture
def toy_data_dir(tmp_path: Path) -> Path:
    return write_toy_csvs(tmp_path / "data")


def dataset_dir() -> Path | None:
    """Directory of the published annotation corpus, when available."""
    root = os.environ.get("STORYMATCH_DATA")
    if not root:
        return None
    path = Path(root)
    return path if path.is_dir() else None


requires_dataset = pytest.mark.skipif(
    dataset_dir() is None,
    reason="published annotation corpus not available (set STORYMATCH_DATA)",
)
