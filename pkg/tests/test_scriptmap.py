import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perso_lid.profiles import LanguageProfile
from perso_lid.scriptmap import (ARABIC_DIGITS, PERSIAN_DIGITS, MappingError, MappingRule,
                                 MappingTable, load_mapping, parse_mapping, save_mapping,
                                 substitutable_positions, validate_table, word_positions)
from perso_lid.synth import corrupt_text

HEADER = "# source: ckb\n# target: fas\n"


def test_load_valid_file(tmp_path):
    path = tmp_path / "ckb-fas.tsv"
    path.write_text(HEADER + "U+06B5\tany\tU+0644\nU+06C6\tany\tU+0648;U+0648 U+0648\n",
                    encoding="utf-8")
    table = load_mapping(path)
    assert len(table.rules) == 2
    assert table.rules[1].targets == ("و", "وو")


def test_duplicate_rule_names_codepoint():
    text = HEADER + "U+06B5\tany\tU+0644\nU+06B5\tany\tU+0648\n"
    with pytest.raises(MappingError, match="U\\+06B5"):
        parse_mapping(text)


def test_non_dominant_target_rejected():
    text = "# source: ckb\n# target: urd\nU+06B5\tany\tU+0644\n"
    with pytest.raises(MappingError, match="not a dominant"):
        parse_mapping(text)


def test_deletion_target():
    table = parse_mapping(HEADER + "U+0626\tword_initial\t-\n")
    assert table.rules[0].targets == ("",)


def test_bad_position():
    with pytest.raises(MappingError, match="position"):
        parse_mapping(HEADER + "U+0626\tsomewhere\tU+0627\n")


def test_save_roundtrip(tmp_path, tables):
    table = tables[("ckb", "fas")]
    save_mapping(table, tmp_path / "t.tsv")
    assert load_mapping(tmp_path / "t.tsv") == table


def test_shipped_tables_load(tables):
    assert ("ckb", "fas") in tables and ("brh", "urd") in tables
    for (src, tgt), table in tables.items():
        assert (table.source_lang, table.target_lang) == (src, tgt)


def test_shipped_tables_are_complete(tables, profiles):
    for table in tables.values():
        report = validate_table(table, profiles)
        assert report.complete, str(report)


class TestValidate:
    def test_sindhi_identity_rule_is_no_violation(self, tables, profiles):
        base = tables[("snd", "urd")]
        heh = "ھ"
        table = MappingTable("snd", "urd", base.rules + (MappingRule(heh, (heh,)),))
        assert validate_table(table, profiles).complete
        # identity contributes no substitutable position
        assert substitutable_positions(heh * 3, table) == []

    def test_brahui_missing_rule_is_a_gap(self, tables, profiles):
        base = tables[("brh", "urd")]
        rules = tuple(r for r in base.rules if r.source != "ڷ")
        report = validate_table(MappingTable("brh", "urd", rules), profiles)
        assert "ڷ" in report.coverage_gaps
        assert not report.complete

    def test_empty_table_identical_inventories(self):
        inv = frozenset("ابت")
        profs = {"xa": LanguageProfile("xa", "abjad", False, False, ("xb",), inv, custom=True),
                 "xb": LanguageProfile("xb", "abjad", False, False, (), inv, custom=True)}
        assert validate_table(MappingTable("xa", "xb", ()), profs).complete

    def test_foreign_target_reported(self, profiles):
        table = MappingTable("ckb", "fas", (MappingRule("ڵ", ("A",)),))
        report = validate_table(table, profiles)
        assert ("ڵ", "A") in report.foreign_targets


class TestPositions:
    def test_no_mapped_characters(self, tables):
        assert substitutable_positions("سلام", tables[("glk", "fas")]) == []

    def test_gilaki_single_occurrence(self, tables):
        text = "ب" + "ۋ" + "ر"
        slots = substitutable_positions(text, tables[("glk", "fas")])
        assert [i for i, _ in slots] == [1]
        assert slots[0][1][0].targets == ("و",)

    def test_word_initial_rule_excludes_final(self):
        table = MappingTable("ckb", "fas", (MappingRule("ئ", ("",), "word_initial"),))
        assert [i for i, _ in substitutable_positions("ئاب", table)] == [0]
        assert substitutable_positions("بائ", table) == []

    def test_kurdish_hamza_carrier_is_word_initial(self, tables):
        rules = tables[("ckb", "fas")].rules_for("ئ")
        assert "word_initial" in rules

    def test_word_positions(self):
        assert word_positions("ab c") == ["word_initial", "word_final", None, "isolated"]
        assert word_positions("abc")[1] == "word_medial"


class TestNumeral:
    def test_five(self):
        from perso_lid.scriptmap import map_numeral
        out = map_numeral("5", np.random.default_rng(11))
        assert out in ("۵", "٥")
        assert map_numeral("5", np.random.default_rng(11)) == out

    def test_zero(self):
        from perso_lid.scriptmap import map_numeral
        assert map_numeral("0", np.random.default_rng(0)) in ("۰", "٠")

    def test_block_frequency(self):
        from perso_lid.scriptmap import map_numeral
        rng = np.random.default_rng(2024)
        draws = [map_numeral("3", rng) for _ in range(10000)]
        persian = sum(d in PERSIAN_DIGITS for d in draws) / len(draws)
        assert abs(persian - 0.5) <= 0.02
        assert all(d in PERSIAN_DIGITS + ARABIC_DIGITS for d in draws)

    def test_rejects_non_digit(self):
        from perso_lid.scriptmap import map_numeral
        with pytest.raises(ValueError):
            map_numeral("x", np.random.default_rng(0))


letters = "ابپتثجچدرزسشکگلمنوهی"
texts = st.text(alphabet=st.sampled_from(list(letters) + [" "]), max_size=40)
rule_st = st.builds(MappingRule, st.sampled_from(list(letters)),
                    st.lists(st.sampled_from(list(letters) + [""]), min_size=1, max_size=3)
                    .map(tuple),
                    st.sampled_from(["any", "word_initial", "word_medial", "word_final"]))


def _table(rules):
    seen, out = set(), []
    for r in rules:
        if (r.source, r.position) not in seen:
            seen.add((r.source, r.position))
            out.append(r)
    return MappingTable("xa", "xb", tuple(out))


@given(texts, st.lists(rule_st, max_size=8), rule_st)
def test_adding_a_rule_never_reduces_positions(text, rules, extra):
    small = _table(rules)
    big = _table(rules + [extra])
    assert len(substitutable_positions(text, big)) >= len(substitutable_positions(text, small))


@given(st.sampled_from(["ckb-fas", "brh-urd", "snd-urd", "kas-urd", "glk-fas", "hac-arb",
                        "pus-fas", "bal-urd"]),
       st.integers(0, 2**32 - 1))
def test_validated_tables_stay_in_target_inventory(tables, profiles, pair, seed):
    src, tgt = pair.split("-")
    table = tables[(src, tgt)]
    assert validate_table(table, profiles).complete
    rng = np.random.default_rng(seed)
    pool = sorted(profiles[src].letters)
    text = " ".join("".join(rng.choice(pool, size=rng.integers(1, 6)))
                    for _ in range(rng.integers(1, 6)))
    result = corrupt_text(text, table, 100, rng)
    allowed = set(profiles[tgt].inventory) | {" "}
    unmapped = {ch for ch in text if not any(r.substitutions for r in table.rules_for(ch).values())}
    positional = {ch for ch in text if table.rules_for(ch) and "any" not in table.rules_for(ch)}
    for ch in result.text:
        assert ch in allowed or ch in unmapped or ch in positional
