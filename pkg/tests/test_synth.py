import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perso_lid.dataset import Dataset
from perso_lid.normalize import Sentence
from perso_lid.profiles import CONVENTIONAL_ONLY, LANGUAGES
from perso_lid.scriptmap import HARAKAT, MappingRule, MappingTable, substitutable_positions
from perso_lid.synth import (NOISE_LEVELS, NoiseSpec, corrupt_corpus, corrupt_sentence,
                             corrupt_text, n_substitutions, sentence_rng)

# one-to-one substitutions keep lengths, so the diff of input and output
# counts the substituted positions exactly
TOY = MappingTable("xa", "xb", (MappingRule("پ", ("ب",)), MappingRule("چ", ("ج",)),
                                MappingRule("ژ", ("ز",))))


def diff_positions(a: str, b: str) -> list[int]:
    assert len(a) == len(b)
    return [i for i, (x, y) in enumerate(zip(a, b)) if x != y]


def test_round_half_up():
    assert n_substitutions(1, 20) == 0
    assert n_substitutions(5, 40) == 2
    assert n_substitutions(5, 50) == 3
    assert n_substitutions(7, 100) == 7


def test_k_zero_leaves_text_unchanged():
    s = Sentence("پ سلام", "xa")
    out = corrupt_sentence(s, [TOY], NoiseSpec(20, seed=3))
    assert out.text == s.text
    assert out.noise_level == 20 and out.origin == "synthetic" and out.lang == "xa"


@pytest.mark.parametrize("seed", range(10))
def test_five_positions_forty_percent(seed):
    text = "پا چا ژا پا چا"
    assert len(substitutable_positions(text, TOY)) == 5
    out = corrupt_sentence(Sentence(text, "xa"), [TOY], NoiseSpec(40, seed=seed))
    assert len(diff_positions(text, out.text)) == 2


def test_level_100_removes_fatha(tables):
    text = "کوردَ ستانَ 12"
    out = corrupt_sentence(Sentence(text, "ckb"), tables, NoiseSpec(100, seed=1))
    assert "َ" not in out.text
    assert not any("0" <= ch <= "9" for ch in out.text)


def test_no_table_error():
    with pytest.raises(ValueError, match="no mapping table"):
        corrupt_sentence(Sentence("abc", "fas"), [TOY], NoiseSpec(20))


def test_fixed_dominant(tables):
    s = Sentence("ڵێک", "ckb")
    _, trace = corrupt_sentence(s, tables, NoiseSpec(100, 0, dominant="arb"), trace=True)
    assert trace.target_lang == "arb"
    with pytest.raises(ValueError):
        corrupt_sentence(s, tables, NoiseSpec(100, 0, dominant="urd"))


def test_invalid_level():
    with pytest.raises(ValueError):
        NoiseSpec(37)
    assert NoiseSpec(37, allow_any_level=True).level == 37


def test_only_clean_input():
    with pytest.raises(ValueError):
        corrupt_sentence(Sentence("پ", "xa", 20, "synthetic"), [TOY], NoiseSpec(20))


def _sample_corpus(profiles, langs, per_lang=3, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for lang in langs:
        pool = sorted(profiles[lang].letters)
        for _ in range(per_lang):
            words = ["".join(rng.choice(pool, size=4)) for _ in range(4)]
            out.append(Sentence(" ".join(words), lang))
    return Dataset(out)


def test_fifteen_languages_five_levels(profiles, tables):
    langs = [lang for lang in LANGUAGES if lang not in CONVENTIONAL_ONLY]
    assert len(langs) == 15
    clean = _sample_corpus(profiles, langs)
    out = corrupt_corpus(clean, tables, NOISE_LEVELS, seed=9)
    assert sorted(out) == list(NOISE_LEVELS)
    for level, ds in out.items():
        assert ds.languages == sorted(langs)
        assert sorted(ds.labels) == sorted(clean.labels)
        assert {s.noise_level for s in ds} == {level}


def test_empty_corpus(tables):
    out = corrupt_corpus(Dataset([]), tables, NOISE_LEVELS, seed=1)
    assert all(len(ds) == 0 for ds in out.values()) and len(out) == 5


def test_same_seed_identical(profiles, tables):
    clean = _sample_corpus(profiles, ["ckb", "kmr", "pnb"], 20)
    a = corrupt_corpus(clean, tables, NOISE_LEVELS, seed=4)
    b = corrupt_corpus(clean, tables, NOISE_LEVELS, seed=4)
    c = corrupt_corpus(clean, tables, NOISE_LEVELS, seed=5)
    assert all(a[lv].texts == b[lv].texts for lv in NOISE_LEVELS)
    assert any(a[lv].texts != c[lv].texts for lv in NOISE_LEVELS)


def test_conventional_only_rejected(tables):
    with pytest.raises(ValueError, match="fas"):
        corrupt_corpus(Dataset([Sentence("سلام", "fas")]), tables, [20])


def test_per_sentence_streams_independent_of_order(profiles, tables):
    clean = _sample_corpus(profiles, ["ckb"], 10)
    full = corrupt_corpus(clean, tables, [60], seed=2)[60]
    i = 7
    spec = NoiseSpec(60, 2)
    alone = corrupt_sentence(clean.sentences[i], tables, spec, sentence_rng(2, 60, i))
    assert alone.text == full.sentences[i].text


toy_text = st.text(alphabet=st.sampled_from(list("پچژابتسَ ") + ["1"]), min_size=1, max_size=40)


@given(toy_text, st.sampled_from([20, 40, 60, 80]), st.integers(0, 2**32 - 1))
def test_non_substitutable_untouched_below_100(text, level, seed):
    result = corrupt_text(text, TOY, level, np.random.default_rng(seed))
    changed = diff_positions(text, result.text)
    slots = {i for i, _ in substitutable_positions(text, TOY)}
    assert set(changed) <= slots
    assert len(changed) == n_substitutions(len(slots), level)


@given(toy_text, st.integers(0, 2**32 - 1))
def test_level_zero_identity(text, seed):
    assert corrupt_text(text, TOY, 0, np.random.default_rng(seed)).text == text


@given(toy_text, st.integers(0, 2**32 - 1))
def test_level_100_has_no_harakat(text, seed):
    out = corrupt_text(text, TOY, 100, np.random.default_rng(seed)).text
    assert not set(out) & HARAKAT


def test_edit_distance_grows_with_level():
    rng = np.random.default_rng(0)
    texts = ["".join(rng.choice(list("پچژابت "), size=30)) for _ in range(400)]
    means = []
    for level in NOISE_LEVELS:
        d = [len(diff_positions(t, corrupt_text(t, TOY, level, sentence_rng(0, level, i)).text))
             for i, t in enumerate(texts)]
        means.append(np.mean(d))
    assert means == sorted(means)
