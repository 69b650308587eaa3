"""Corpus loading, validation, importance, and character-set selection."""

from __future__ import annotations

import csv

import pytest

from storymatch.corpus import (
    CharacterRecord,
    CharsetKind,
    Corpus,
    CorpusError,
    InteractionRecord,
    NarrativeUnit,
    PeriodSpec,
    Sex,
    UnitKind,
    compute_importance,
    load_corpus,
    select_characters,
)

from conftest import BEATS, write_toy_csvs


class TestLoadCorpus:
    def test_round_trip_counts(self, toy_data_dir, toy_corpus):
        loaded = load_corpus(toy_data_dir)
        assert len(loaded.characters) == len(toy_corpus.characters)
        assert len(loaded.interactions) == len(toy_corpus.interactions)
        assert len(loaded.units_of("novels", UnitKind.CHAPTER)) == 6
        assert len(loaded.units_of("comics", UnitKind.SCENE)) == 12
        assert loaded.finest_kind("novels") is UnitKind.CHAPTER
        assert loaded.finest_kind("tvshow") is UnitKind.SCENE

    def test_alias_interaction_stored_under_canonical(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "interactions.csv", "a", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerow(["nc0", "Fat Bren", "Cass", 1])
        corpus = load_corpus(data)
        stored = [
            rec for rec in corpus.interactions_of_unit("nc0")
            if {rec.char_a, rec.char_b} == {"Bren", "Cass"}
        ]
        assert len(stored) == 1

    def test_empty_interactions_ok(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        (data / "interactions.csv").write_text(
            "unit_id,char_a,char_b,count\n", encoding="utf-8"
        )
        corpus = load_corpus(data)
        assert corpus.interactions == ()

    def test_unknown_alias_strict_vs_lenient(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "aliases.csv", "a", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerow(["Ghost", "Nobody"])
        with pytest.raises(CorpusError, match="Nobody"):
            load_corpus(data, strict=True)
        corpus = load_corpus(data, strict=False)
        assert corpus.characters["Nobody"].named is False

    def test_duplicate_canonical_name(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "characters.csv", "a", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerow(["Aria", "Female", "North", "true"])
        with pytest.raises(CorpusError, match="duplicate canonical name"):
            load_corpus(data)

    def test_dangling_unit_reference(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "interactions.csv", "a", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerow(["missing_unit", "Aria", "Bren", 1])
        with pytest.raises(CorpusError, match="missing_unit"):
            load_corpus(data)

    def test_malformed_row_reports_file_and_line(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "characters.csv", "a", newline="", encoding="utf-8") as fh:
            fh.write("BadRow,NotASex,,true\n")
        with pytest.raises(CorpusError) as err:
            load_corpus(data)
        assert "characters.csv:12" in str(err.value)

    def test_alias_cycle_reported(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "aliases.csv", "a", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["Foo", "Bar"])
            writer.writerow(["Bar", "Foo"])
        with pytest.raises(CorpusError, match="alias cycle"):
            load_corpus(data)

    def test_self_interaction_rejected(self, tmp_path):
        data = write_toy_csvs(tmp_path / "d")
        with open(data / "interactions.csv", "a", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerow(["nc0", "Ari", "Aria", 1])
        with pytest.raises(CorpusError, match="self-interaction"):
            load_corpus(data)


class TestCorpusQueries:
    def test_normalize_idempotent(self, toy_corpus):
        for name in ["Ari", "Fat Bren", "Aria", "Cass"]:
            once = toy_corpus.normalize_name(name)
            assert toy_corpus.normalize_name(once) == once

    def test_ordinal_contiguity_enforced(self):
        units = [
            NarrativeUnit("t0", "m", UnitKind.TOP_LEVEL, 0),
            NarrativeUnit("c0", "m", UnitKind.CHAPTER, 0, {UnitKind.TOP_LEVEL: "t0"}),
            NarrativeUnit("c2", "m", UnitKind.CHAPTER, 2, {UnitKind.TOP_LEVEL: "t0"}),
        ]
        with pytest.raises(CorpusError, match="ordinals"):
            Corpus([CharacterRecord("A"), CharacterRecord("B")], units, [])

    def test_top_level_ancestor_required(self):
        units = [NarrativeUnit("c0", "m", UnitKind.CHAPTER, 0)]
        with pytest.raises(CorpusError, match="top-level"):
            Corpus([CharacterRecord("A")], units, [])

    def test_units_in_period(self, toy_corpus):
        u1 = toy_corpus.period("U1")
        chapters = toy_corpus.units_in_period("novels", UnitKind.CHAPTER, u1)
        assert [u.id for u in chapters] == ["nc0", "nc1", "nc2"]


class TestImportance:
    def test_single_character_single_medium(self):
        corpus = Corpus(
            [CharacterRecord("A"), CharacterRecord("B")],
            [
                NarrativeUnit("t0", "m", UnitKind.TOP_LEVEL, 0),
                NarrativeUnit("c0", "m", UnitKind.CHAPTER, 0, {UnitKind.TOP_LEVEL: "t0"}),
            ],
            [InteractionRecord("c0", "A", "B", 1)],
            [PeriodSpec("P", {"m": (0, 0)})],
        )
        table = compute_importance(corpus, ["m"], corpus.period("P"))
        assert table.scores["A"]["m"] == 1.0
        assert table.means["A"] == 1.0

    def test_recount_oracle_on_toy(self, toy_corpus):
        period = toy_corpus.period("U2")
        table = compute_importance(toy_corpus, ["novels"], period)

        # independent recount straight from the beat script
        counts: dict[str, int] = {}
        for beat in BEATS:
            seen = set()
            for a, b, _ in beat:
                seen.add(a)
                seen.add(b)
            for name in seen:
                counts[name] = counts.get(name, 0) + 1
        peak = max(counts.values())
        for name, count in counts.items():
            assert table.scores[name]["novels"] == pytest.approx(count / peak)
        expected_rank = sorted(counts, key=lambda n: (-counts[n] / peak, n))
        assert table.ranked() == expected_rank

    def test_absent_characters_score_zero(self, toy_corpus):
        period = toy_corpus.period("U2")
        table = compute_importance(toy_corpus, ["novels", "comics"], period)
        assert table.scores["Gwen"].get("comics", 0.0) == 0.0
        assert table.means["Gwen"] == pytest.approx(
            table.scores["Gwen"]["novels"] / 2
        )

    def test_every_medium_column_attains_one(self, toy_corpus):
        period = toy_corpus.period("U2")
        table = compute_importance(toy_corpus, ["novels", "comics", "tvshow"], period)
        for medium in table.media:
            peak = max(per.get(medium, 0.0) for per in table.scores.values())
            assert peak == 1.0
        assert all(0.0 <= m <= 1.0 for m in table.means.values())

    def test_empty_period_medium_errors(self, toy_corpus):
        bad = PeriodSpec("BAD", {"novels": (0, 1), "missing": (0, 0)})
        with pytest.raises(CorpusError):
            compute_importance(toy_corpus, ["missing"], bad)


class TestSelectCharacters:
    def test_named_and_common_counts(self, toy_corpus):
        period = toy_corpus.period("U2")
        named_novels = select_characters(toy_corpus, "named", ["novels"], period)
        assert len(named_novels) == 8
        media = ["novels", "comics", "tvshow"]
        common = select_characters(toy_corpus, "common", media, period)
        assert common == ["Aria", "Bren", "Cass", "Dorn", "Elia", "Fenn"]
        everyone = select_characters(toy_corpus, "all", ["tvshow"], period)
        assert "stable boy" in everyone and "merchant" in everyone

    def test_topk_prefix_property(self, toy_corpus):
        period = toy_corpus.period("U2")
        media = ("novels", "comics", "tvshow")
        table = compute_importance(toy_corpus, media, period)
        previous: list[str] = []
        for k in range(1, 7):
            top = select_characters(
                toy_corpus, CharsetKind.TOP_K, media, period, importance=table, k=k
            )
            assert top[: len(previous)] == previous
            previous = top

    def test_topk_full_equals_common(self, toy_corpus):
        period = toy_corpus.period("U2")
        media = ("novels", "comics", "tvshow")
        table = compute_importance(toy_corpus, media, period)
        common = select_characters(toy_corpus, "common", media, period)
        top = select_characters(
            toy_corpus, "topk", media, period, importance=table, k=len(common)
        )
        assert sorted(top) == common

    def test_common_antitone_in_media(self, toy_corpus):
        period = toy_corpus.period("U2")
        small = select_characters(toy_corpus, "common", ["novels", "comics"], period)
        large = select_characters(
            toy_corpus, "common", ["novels", "comics", "tvshow"], period
        )
        assert set(large) <= set(small)

    def test_k_exceeding_common_errors(self, toy_corpus):
        period = toy_corpus.period("U2")
        media = ("novels", "comics", "tvshow")
        table = compute_importance(toy_corpus, media, period)
        with pytest.raises(ValueError, match="exceeds"):
            select_characters(
                toy_corpus, "topk", media, period, importance=table, k=100
            )

    def test_extra_characters_forced(self, toy_corpus):
        period = toy_corpus.period("U2")
        media = ("novels", "comics", "tvshow")
        table = compute_importance(toy_corpus, media, period)
        top = select_characters(
            toy_corpus, "topk", media, period, importance=table, k=2, extra=["Hale"]
        )
        assert "Hale" in top and len(top) == 3
