"""Annotation corpus: characters, narrative units, interactions, periods.

A corpus bundles everything a set of adaptations provides as raw annotation
data: the character roster with its alias map and attributes, the narrative
units of every medium (scenes, chapters, episodes, ...) with their parent
links, the per-unit character interactions, and the named story periods used
to cut comparable slices out of each medium.

All input files are UTF-8 CSV with a header row:

* ``characters.csv``   canonical_name,sex,affiliation,named
* ``aliases.csv``      alias,canonical_name
* ``units.csv``        id,medium,kind,ordinal,parent_ids,location
  (``parent_ids`` is a semicolon-joined list of ``Kind=unit_id`` pairs)
* ``interactions.csv`` unit_id,char_a,char_b,count
* ``periods.csv``      label,medium,first_ordinal,last_ordinal

A :class:`Corpus` is immutable after construction and safe to share between
threads; loading itself is single-threaded.
"""

from __future__ import annotations

import csv
import enum
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class Sex(enum.Enum):
    MALE = "Male"
    FEMALE = "Female"
    UNKNOWN = "Unknown"
    MIXED = "Mixed"


class UnitKind(enum.Enum):
    SCENE = "Scene"
    BLOCK = "Block"
    CHAPTER = "Chapter"
    ISSUE = "Issue"
    EPISODE = "Episode"
    TOP_LEVEL = "TopLevel"


class CharsetKind(enum.Enum):
    ALL = "all"
    NAMED = "named"
    COMMON = "common"
    TOP_K = "topk"


class CorpusError(ValueError):
    """Raised when corpus data is malformed; carries one message per problem."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class CharacterRecord:
    canonical_name: str
    aliases: frozenset[str] = frozenset()
    sex: Sex = Sex.UNKNOWN
    affiliation: str = ""
    named: bool = True


@dataclass(frozen=True)
class NarrativeUnit:
    id: str
    medium: str
    kind: UnitKind
    ordinal: int
    parent_ids: Mapping[UnitKind, str] = field(default_factory=dict)
    location: str | None = None


@dataclass(frozen=True)
class InteractionRecord:
    unit_id: str
    char_a: str
    char_b: str
    count: int = 1


@dataclass(frozen=True)
class PeriodSpec:
    """A named story period given as inclusive top-level ordinal ranges.

    ``ranges`` maps a medium to ``(first_ordinal, last_ordinal)`` over that
    medium's top-level units (books, volumes, seasons).
    """

    label: str
    ranges: Mapping[str, tuple[int, int]]

    def range_for(self, medium: str) -> tuple[int, int]:
        if medium not in self.ranges:
            raise CorpusError(
                [f"period {self.label!r} does not cover medium {medium!r}"]
            )
        return self.ranges[medium]


@dataclass(frozen=True)
class ImportanceTable:
    """Per-character, per-medium occurrence scores plus their mean.

    Scores are occurrence counts over the finest annotated unit of each
    medium, max-normalised per medium so the most frequent character scores
    exactly 1. Characters absent from a medium score 0 there. The mean is
    taken over all requested media.
    """

    media: tuple[str, ...]
    period_label: str
    scores: Mapping[str, Mapping[str, float]]
    means: Mapping[str, float]

    def ranked(self) -> list[str]:
        """Characters by descending mean score, ties by name ascending."""
        return sorted(self.means, key=lambda c: (-self.means[c], c))

    def top(self, k: int) -> list[str]:
        ranked = self.ranked()
        if k > len(ranked):
            raise ValueError(f"k={k} exceeds table size {len(ranked)}")
        return ranked[:k]


def _parse_sex(text: str) -> Sex:
    try:
        return Sex(text.strip().capitalize())
    except ValueError:
        raise ValueError(f"invalid sex value {text!r}") from None


def _parse_kind(text: str) -> UnitKind:
    key = text.strip().lower()
    for kind in UnitKind:
        if kind.value.lower() == key:
            return kind
    raise ValueError(f"invalid unit kind {text!r}")


def _parse_bool(text: str) -> bool:
    key = text.strip().lower()
    if key in ("true", "1", "yes"):
        return True
    if key in ("false", "0", "no"):
        return False
    raise ValueError(f"invalid boolean {text!r}")


def _parse_parents(text: str) -> dict[UnitKind, str]:
    parents: dict[UnitKind, str] = {}
    if not text.strip():
        return parents
    for part in text.split(";"):
        if "=" not in part:
            raise ValueError(f"invalid parent entry {part!r}")
        kind_text, unit_id = part.split("=", 1)
        parents[_parse_kind(kind_text)] = unit_id.strip()
    return parents


class Corpus:
    """Validated, immutable view over one or more annotated adaptations."""

    def __init__(
        self,
        characters: Iterable[CharacterRecord],
        units: Iterable[NarrativeUnit],
        interactions: Iterable[InteractionRecord],
        periods: Iterable[PeriodSpec] = (),
        aliases: Mapping[str, str] | None = None,
        strict: bool = True,
    ):
        errors: list[str] = []
        self.characters: dict[str, CharacterRecord] = {}
        for rec in characters:
            if not rec.canonical_name:
                errors.append("empty canonical name")
                continue
            if rec.canonical_name in self.characters:
                errors.append(f"duplicate canonical name {rec.canonical_name!r}")
                continue
            self.characters[rec.canonical_name] = rec

        self._alias_map = self._resolve_aliases(aliases or {}, errors, strict)
        for rec in list(self.characters.values()):
            for alias in rec.aliases:
                self._register_alias(alias, rec.canonical_name, errors)

        self.units: dict[str, NarrativeUnit] = {}
        for unit in units:
            if unit.id in self.units:
                errors.append(f"duplicate unit id {unit.id!r}")
                continue
            self.units[unit.id] = unit

        self._units_by_group: dict[tuple[str, UnitKind], list[NarrativeUnit]] = (
            defaultdict(list)
        )
        for unit in self.units.values():
            self._units_by_group[(unit.medium, unit.kind)].append(unit)
        for (medium, kind), group in self._units_by_group.items():
            group.sort(key=lambda u: (u.ordinal, u.id))
            ordinals = [u.ordinal for u in group]
            if ordinals != list(range(len(group))):
                errors.append(
                    f"ordinals of ({medium}, {kind.value}) units are not 0..{len(group) - 1}"
                )

        self._top_level: dict[str, NarrativeUnit] = {}
        for unit in self.units.values():
            top = self._find_top_level(unit, errors)
            if top is not None:
                self._top_level[unit.id] = top

        self.interactions: tuple[InteractionRecord, ...] = tuple(
            self._validate_interactions(interactions, errors, strict)
        )

        self._interactions_by_unit: dict[str, list[InteractionRecord]] = defaultdict(
            list
        )
        for rec in self.interactions:
            self._interactions_by_unit[rec.unit_id].append(rec)

        self._finest_kind: dict[str, UnitKind] = {}
        seen_kinds: dict[str, set[UnitKind]] = defaultdict(set)
        for rec in self.interactions:
            unit = self.units.get(rec.unit_id)
            if unit is not None:
                seen_kinds[unit.medium].add(unit.kind)
        for medium, kinds in seen_kinds.items():
            if len(kinds) > 1:
                names = sorted(k.value for k in kinds)
                errors.append(
                    f"medium {medium!r} has interactions at multiple kinds: {names}"
                )
            else:
                self._finest_kind[medium] = next(iter(kinds))

        self.periods: dict[str, PeriodSpec] = {}
        for period in periods:
            if period.label in self.periods:
                errors.append(f"duplicate period label {period.label!r}")
                continue
            for medium, (first, last) in period.ranges.items():
                count = len(self._units_by_group.get((medium, UnitKind.TOP_LEVEL), ()))
                if first > last or first < 0 or last >= count:
                    errors.append(
                        f"period {period.label!r} range {first}..{last} invalid for "
                        f"medium {medium!r} with {count} top-level units"
                    )
            self.periods[period.label] = period

        if errors:
            raise CorpusError(errors)

    # -- construction helpers -------------------------------------------------

    def _resolve_aliases(
        self, aliases: Mapping[str, str], errors: list[str], strict: bool
    ) -> dict[str, str]:
        resolved: dict[str, str] = {}
        for alias in aliases:
            target = alias
            chain = [alias]
            while target in aliases and target not in self.characters:
                target = aliases[target]
                if target in chain:
                    cycle = " -> ".join(chain + [target])
                    errors.append(f"alias cycle: {cycle}")
                    target = None
                    break
                chain.append(target)
            if target is None:
                continue
            if target not in self.characters:
                if strict:
                    errors.append(
                        f"alias {alias!r} resolves to unknown character {target!r}"
                    )
                    continue
                self.characters[target] = CharacterRecord(
                    canonical_name=target, named=False
                )
            resolved[alias] = target
        return resolved

    def _register_alias(self, alias: str, canonical: str, errors: list[str]) -> None:
        existing = self._alias_map.get(alias)
        if existing is not None and existing != canonical:
            errors.append(
                f"alias {alias!r} maps to both {existing!r} and {canonical!r}"
            )
            return
        if alias in self.characters and alias != canonical:
            errors.append(
                f"alias {alias!r} collides with canonical name of another character"
            )
            return
        self._alias_map[alias] = canonical

    def _find_top_level(
        self, unit: NarrativeUnit, errors: list[str]
    ) -> NarrativeUnit | None:
        seen = set()
        current = unit
        while current.kind is not UnitKind.TOP_LEVEL:
            if current.id in seen:
                errors.append(f"parent cycle at unit {unit.id!r}")
                return None
            seen.add(current.id)
            if UnitKind.TOP_LEVEL in current.parent_ids:
                parent_id = current.parent_ids[UnitKind.TOP_LEVEL]
            elif current.parent_ids:
                # follow any parent; the chain must eventually hit a top level
                parent_id = next(
                    current.parent_ids[k]
                    for k in sorted(current.parent_ids, key=lambda k: k.value)
                )
            else:
                errors.append(f"unit {unit.id!r} has no top-level ancestor")
                return None
            parent = self.units.get(parent_id)
            if parent is None:
                errors.append(f"unit {current.id!r} references unknown parent {parent_id!r}")
                return None
            current = parent
        return current

    def _validate_interactions(
        self,
        interactions: Iterable[InteractionRecord],
        errors: list[str],
        strict: bool,
    ) -> list[InteractionRecord]:
        out = []
        for rec in interactions:
            if rec.unit_id not in self.units:
                errors.append(f"interaction references unknown unit {rec.unit_id!r}")
                continue
            if rec.count < 1:
                errors.append(f"interaction in {rec.unit_id!r} has count {rec.count}")
                continue
            try:
                a = self.normalize_name(rec.char_a, create=not strict)
                b = self.normalize_name(rec.char_b, create=not strict)
            except KeyError as exc:
                errors.append(f"unknown character {exc.args[0]!r} in unit {rec.unit_id!r}")
                continue
            if a == b:
                errors.append(
                    f"self-interaction for {a!r} in unit {rec.unit_id!r} rejected"
                )
                continue
            if a > b:
                a, b = b, a
            out.append(InteractionRecord(rec.unit_id, a, b, rec.count))
        return out

    # -- queries ---------------------------------------------------------------

    def normalize_name(self, name: str, create: bool = False) -> str:
        """Resolve a name or alias to its canonical form (idempotent)."""
        if name in self.characters:
            return name
        if name in self._alias_map:
            return self._alias_map[name]
        if create:
            self.characters[name] = CharacterRecord(canonical_name=name, named=False)
            return name
        raise KeyError(name)

    @property
    def media(self) -> tuple[str, ...]:
        return tuple(sorted({u.medium for u in self.units.values()}))

    def finest_kind(self, medium: str) -> UnitKind:
        if medium not in self._finest_kind:
            raise CorpusError([f"medium {medium!r} has no annotated interactions"])
        return self._finest_kind[medium]

    def units_of(self, medium: str, kind: UnitKind) -> list[NarrativeUnit]:
        return list(self._units_by_group.get((medium, kind), ()))

    def top_level_of(self, unit_id: str) -> NarrativeUnit:
        return self._top_level[unit_id]

    def units_in_period(
        self, medium: str, kind: UnitKind, period: PeriodSpec | None
    ) -> list[NarrativeUnit]:
        """Units of one kind whose top-level ancestor falls in the period."""
        units = self.units_of(medium, kind)
        if period is None:
            return units
        first, last = period.range_for(medium)
        return [
            u for u in units if first <= self._top_level[u.id].ordinal <= last
        ]

    def interactions_of_unit(self, unit_id: str) -> list[InteractionRecord]:
        return list(self._interactions_by_unit.get(unit_id, ()))

    def appearances(
        self, medium: str, period: PeriodSpec | None = None
    ) -> dict[str, set[str]]:
        """Map each character to the finest-kind units where it interacts."""
        result: dict[str, set[str]] = defaultdict(set)
        kind = self.finest_kind(medium)
        for unit in self.units_in_period(medium, kind, period):
            for rec in self._interactions_by_unit.get(unit.id, ()):
                result[rec.char_a].add(unit.id)
                result[rec.char_b].add(unit.id)
        return dict(result)

    def period(self, label: str) -> PeriodSpec:
        if label not in self.periods:
            raise KeyError(label)
        return self.periods[label]


def compute_importance(
    corpus: Corpus, media: Iterable[str], period: PeriodSpec
) -> ImportanceTable:
    """Score character importance by normalised occurrence counts.

    For each medium, a character's occurrence count is the number of
    finest-kind units (within the period) in which it appears; the count is
    divided by the medium's maximum so the busiest character scores 1.
    """
    media = tuple(media)
    scores: dict[str, dict[str, float]] = defaultdict(dict)
    for medium in media:
        appearance = corpus.appearances(medium, period)
        if not corpus.units_in_period(medium, corpus.finest_kind(medium), period):
            raise CorpusError(
                [f"period {period.label!r} has zero units for medium {medium!r}"]
            )
        counts = {char: len(units) for char, units in appearance.items()}
        peak = max(counts.values(), default=0)
        for char, count in counts.items():
            scores[char][medium] = count / peak if peak else 0.0
    means = {
        char: sum(per_medium.get(m, 0.0) for m in media) / len(media)
        for char, per_medium in scores.items()
    }
    frozen = {char: dict(per_medium) for char, per_medium in scores.items()}
    return ImportanceTable(media, period.label, frozen, means)


def select_characters(
    corpus: Corpus,
    set_kind: CharsetKind | str,
    media: Iterable[str],
    period: PeriodSpec,
    importance: ImportanceTable | None = None,
    k: int | None = None,
    extra: Iterable[str] = (),
) -> list[str]:
    """Select an ordered character set for matching experiments.

    ``all`` keeps every character appearing in at least one of the given
    media during the period; ``named`` additionally requires a proper noun;
    ``common`` keeps named characters present in every given medium; and
    ``topk`` keeps the ``k`` characters of ``common`` with the highest mean
    importance. ``extra`` forces the listed characters into the result, used
    to study characters of special interest that the filters would drop.
    """
    if isinstance(set_kind, str):
        set_kind = CharsetKind(set_kind.lower().replace("-", "").replace("_", ""))
    media = tuple(media)
    if set_kind in (CharsetKind.COMMON, CharsetKind.TOP_K) and len(media) < 2:
        raise ValueError(f"{set_kind.value} selection needs at least two media")

    present: dict[str, set[str]] = {m: set(corpus.appearances(m, period)) for m in media}
    anywhere = set().union(*present.values()) if present else set()

    if set_kind is CharsetKind.ALL:
        chosen = anywhere
    else:
        named = {c for c in anywhere if corpus.characters[c].named}
        if set_kind is CharsetKind.NAMED:
            chosen = named
        else:
            common = named.intersection(*present.values())
            if set_kind is CharsetKind.COMMON:
                chosen = common
            else:
                if importance is None or k is None:
                    raise ValueError("topk selection needs an importance table and k")
                if importance.media != media or importance.period_label != period.label:
                    raise ValueError(
                        "importance table was computed for different media or period"
                    )
                if k > len(common):
                    raise ValueError(f"k={k} exceeds common-set size {len(common)}")
                ranked = [c for c in importance.ranked() if c in common]
                result = ranked[:k]
                for name in extra:
                    canonical = corpus.normalize_name(name)
                    if canonical not in result:
                        result.append(canonical)
                return result
    chosen = set(chosen)
    for name in extra:
        chosen.add(corpus.normalize_name(name))
    return sorted(chosen)


# -- CSV loading ----------------------------------------------------------------

_FILE_COLUMNS = {
    "characters": ["canonical_name", "sex", "affiliation", "named"],
    "aliases": ["alias", "canonical_name"],
    "units": ["id", "medium", "kind", "ordinal", "parent_ids", "location"],
    "interactions": ["unit_id", "char_a", "char_b", "count"],
    "periods": ["label", "medium", "first_ordinal", "last_ordinal"],
}


def _read_rows(path: Path, expected: list[str], errors: list[str]):
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            errors.append(f"{path}:1: missing header row")
            return
        if [h.strip() for h in header] != expected:
            errors.append(f"{path}:1: expected header {','.join(expected)}")
            return
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(expected):
                errors.append(
                    f"{path}:{reader.line_num}: expected {len(expected)} fields, got {len(row)}"
                )
                continue
            yield reader.line_num, row


def load_corpus(paths: str | Path | Iterable[str | Path], strict: bool = True) -> Corpus:
    """Load and validate a corpus from CSV files.

    ``paths`` is either a directory containing the standard file names or an
    explicit collection of files, recognised by basename. Validation problems
    are reported together with file and line; in lenient mode unknown names
    auto-create unnamed characters and self-interactions are dropped.
    """
    if isinstance(paths, (str, Path)):
        root = Path(paths)
        if root.is_dir():
            paths = [root / f"{name}.csv" for name in _FILE_COLUMNS]
        else:
            paths = [root]
    files: dict[str, Path] = {}
    for p in paths:
        p = Path(p)
        stem = p.stem.lower()
        if stem in _FILE_COLUMNS:
            if p.exists():
                files[stem] = p
        else:
            raise CorpusError([f"unrecognised corpus file {p.name!r}"])
    for required in ("characters", "units", "interactions"):
        if required not in files:
            raise CorpusError([f"missing required file {required}.csv"])

    errors: list[str] = []
    characters: list[CharacterRecord] = []
    for line, row in _read_rows(files["characters"], _FILE_COLUMNS["characters"], errors):
        try:
            characters.append(
                CharacterRecord(
                    canonical_name=row[0].strip(),
                    sex=_parse_sex(row[1]),
                    affiliation=row[2].strip(),
                    named=_parse_bool(row[3]),
                )
            )
        except ValueError as exc:
            errors.append(f"{files['characters']}:{line}: {exc}")

    aliases: dict[str, str] = {}
    if "aliases" in files:
        for line, row in _read_rows(files["aliases"], _FILE_COLUMNS["aliases"], errors):
            alias, canonical = row[0].strip(), row[1].strip()
            if alias in aliases and aliases[alias] != canonical:
                errors.append(
                    f"{files['aliases']}:{line}: alias {alias!r} maps to both "
                    f"{aliases[alias]!r} and {canonical!r}"
                )
                continue
            aliases[alias] = canonical

    units: list[NarrativeUnit] = []
    for line, row in _read_rows(files["units"], _FILE_COLUMNS["units"], errors):
        try:
            units.append(
                NarrativeUnit(
                    id=row[0].strip(),
                    medium=row[1].strip(),
                    kind=_parse_kind(row[2]),
                    ordinal=int(row[3]),
                    parent_ids=_parse_parents(row[4]),
                    location=row[5].strip() or None,
                )
            )
        except ValueError as exc:
            errors.append(f"{files['units']}:{line}: {exc}")

    interactions: list[InteractionRecord] = []
    for line, row in _read_rows(
        files["interactions"], _FILE_COLUMNS["interactions"], errors
    ):
        try:
            count = int(row[3]) if row[3].strip() else 1
            interactions.append(
                InteractionRecord(row[0].strip(), row[1].strip(), row[2].strip(), count)
            )
        except ValueError as exc:
            errors.append(f"{files['interactions']}:{line}: {exc}")

    period_ranges: dict[str, dict[str, tuple[int, int]]] = defaultdict(dict)
    if "periods" in files:
        for line, row in _read_rows(files["periods"], _FILE_COLUMNS["periods"], errors):
            try:
                period_ranges[row[0].strip()][row[1].strip()] = (
                    int(row[2]),
                    int(row[3]),
                )
            except ValueError as exc:
                errors.append(f"{files['periods']}:{line}: {exc}")
    periods = [PeriodSpec(label, dict(r)) for label, r in period_ranges.items()]

    if errors:
        raise CorpusError(errors)
    return Corpus(characters, units, interactions, periods, aliases, strict=strict)
