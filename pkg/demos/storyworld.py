"""A miniature story world shared by the demo scripts.

The same six-beat story is told three times: as "novels" annotated per
chapter, as "comics" annotated per scene (scenes roll up into chapters and
issues), and as a "tvshow" annotated per scene with filming locations. Two
characters are dropped from one adaptation each, the way real adaptations
trim their casts.
"""

from __future__ import annotations

from storymatch import (
    CharacterRecord,
    Corpus,
    InteractionRecord,
    NarrativeUnit,
    PeriodSpec,
    Sex,
    UnitKind,
)

BEATS = [
    [("Aria", "Bren", 2), ("Aria", "Gwen", 1)],
    [("Aria", "Bren", 1), ("Bren", "Gwen", 1)],
    [("Cass", "Dorn", 2), ("Dorn", "Hale", 1)],
    [("Cass", "Dorn", 1), ("Cass", "Hale", 1)],
    [("Elia", "Fenn", 2), ("Aria", "Elia", 1)],
    [("Elia", "Fenn", 1), ("Bren", "Fenn", 1), ("Aria", "Bren", 1)],
]

BEAT_TEXTS = [
    "wolves gather in the north keep under winter banners",
    "ravens carry north letters while banners argue",
    "southern crowns trade debts in the great hall",
    "the hall whispers of crowns and poisoned debts",
    "ships sail east to the port of spices",
    "the port burns as eastern ships flee the spices",
]

TV_LOCATIONS = [
    "North Keep", "North Keep", "South Hall",
    "South Hall", "South Hall", "East Port",
    "East Port", "North Keep", "North Keep",
    "East Port", "East Port", "East Port",
]

EPISODE_BEATS = {"te0": [0, 0, 1], "te1": [1, 2, 2], "te2": [3, 3, 4], "te3": [4, 5, 5]}

DROPPED = {"comics": {"Gwen"}, "tvshow": {"Hale"}}

CHARACTERS = [
    CharacterRecord("Aria", frozenset({"Ari"}), Sex.FEMALE, "North", True),
    CharacterRecord("Bren", frozenset({"Fat Bren"}), Sex.MALE, "North", True),
    CharacterRecord("Cass", frozenset(), Sex.FEMALE, "South", True),
    CharacterRecord("Dorn", frozenset(), Sex.MALE, "South", True),
    CharacterRecord("Elia", frozenset(), Sex.FEMALE, "East", True),
    CharacterRecord("Fenn", frozenset(), Sex.MALE, "East", True),
    CharacterRecord("Gwen", frozenset(), Sex.FEMALE, "North", True),
    CharacterRecord("Hale", frozenset(), Sex.MALE, "South", True),
    CharacterRecord("stable boy", frozenset(), Sex.MALE, "", False),
]


def _beat(medium: str, index: int):
    dropped = DROPPED.get(medium, set())
    return [
        (a, b, c) for a, b, c in BEATS[index] if a not in dropped and b not in dropped
    ]


def build_corpus() -> Corpus:
    units: list[NarrativeUnit] = []
    interactions: list[InteractionRecord] = []

    for b in range(2):
        units.append(NarrativeUnit(f"nb{b}", "novels", UnitKind.TOP_LEVEL, b))
    for c in range(6):
        units.append(
            NarrativeUnit(
                f"nc{c}", "novels", UnitKind.CHAPTER, c,
                {UnitKind.TOP_LEVEL: f"nb{c // 3}"},
            )
        )
        for a, b, count in _beat("novels", c):
            interactions.append(InteractionRecord(f"nc{c}", a, b, count))

    for v in range(2):
        units.append(NarrativeUnit(f"cv{v}", "comics", UnitKind.TOP_LEVEL, v))
    for i, volume in enumerate((0, 0, 1)):
        units.append(
            NarrativeUnit(
                f"ci{i}", "comics", UnitKind.ISSUE, i, {UnitKind.TOP_LEVEL: f"cv{volume}"}
            )
        )
    for c in range(6):
        units.append(
            NarrativeUnit(
                f"cc{c}", "comics", UnitKind.CHAPTER, c, {UnitKind.ISSUE: f"ci{c // 2}"}
            )
        )
    for s in range(12):
        units.append(
            NarrativeUnit(
                f"cs{s}", "comics", UnitKind.SCENE, s, {UnitKind.CHAPTER: f"cc{s // 2}"}
            )
        )
        for a, b, count in _beat("comics", s // 2)[s % 2 :: 2]:
            interactions.append(InteractionRecord(f"cs{s}", a, b, count))

    for t in range(2):
        units.append(NarrativeUnit(f"ts{t}", "tvshow", UnitKind.TOP_LEVEL, t))
    for e in range(4):
        units.append(
            NarrativeUnit(
                f"te{e}", "tvshow", UnitKind.EPISODE, e, {UnitKind.TOP_LEVEL: f"ts{e // 2}"}
            )
        )
    for s in range(12):
        units.append(
            NarrativeUnit(
                f"tv{s}", "tvshow", UnitKind.SCENE, s,
                {UnitKind.EPISODE: f"te{s // 3}"}, location=TV_LOCATIONS[s],
            )
        )
        for a, b, count in _beat("tvshow", s // 2)[s % 2 :: 2]:
            interactions.append(InteractionRecord(f"tv{s}", a, b, count))

    periods = [
        PeriodSpec("U1", {"novels": (0, 0), "comics": (0, 0), "tvshow": (0, 0)}),
        PeriodSpec("U2", {"novels": (0, 1), "comics": (0, 1), "tvshow": (0, 1)}),
    ]
    return Corpus(CHARACTERS, units, interactions, periods, {"Ari": "Aria"})


def novel_summaries() -> list[str]:
    return list(BEAT_TEXTS)


def episode_summaries() -> list[str]:
    return [" ".join(BEAT_TEXTS[b] for b in EPISODE_BEATS[f"te{e}"]) for e in range(4)]
