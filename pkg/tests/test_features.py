import pytest
from hypothesis import given
from hypothesis import strategies as st

from perso_lid.features import NgramSpec, Vectorizer, char_ngrams, extract_char_ngrams, fnv1a


def test_boundaries_on():
    assert sorted(extract_char_ngrams("ab", NgramSpec(2, 2, True))) == sorted(["<a", "ab", "b>"])


def test_boundaries_off():
    assert extract_char_ngrams("ab", NgramSpec(2, 3, False)) == ["ab"]


def test_empty():
    assert extract_char_ngrams("", NgramSpec(2, 4)) == []


def test_per_word():
    assert char_ngrams("ab cd", 2, 2, False) == ["ab", "cd"]


def test_spec_bounds():
    with pytest.raises(ValueError):
        NgramSpec(3, 2)
    with pytest.raises(ValueError):
        NgramSpec(1, 9)


def test_fnv1a_reference():
    # published FNV-1a 32-bit test vectors
    assert fnv1a("") == 0x811C9DC5
    assert fnv1a("a") == 0xE40C292C
    assert fnv1a("foobar") == 0xBF9CF968


def test_hashed_ids_in_range():
    spec = NgramSpec(2, 3, hash_buckets=17)
    ids = extract_char_ngrams("سلام دنیا", spec)
    assert ids and all(0 <= i < 17 for i in ids)


def test_vectorizer_counts():
    vec = Vectorizer(NgramSpec(2, 2)).fit(["aaa", "ab"])
    X = vec.transform(["aaa", "zz"])
    assert X[0, vec.vocabulary["aa"]] == 2
    assert X[1].nnz == 0


def test_vectorizer_max_features_keeps_frequent():
    vec = Vectorizer(NgramSpec(2, 2)).fit(["aaaa", "ab"], max_features=1)
    assert list(vec.vocabulary) == ["aa"]


@given(st.text(max_size=30), st.integers(1, 4), st.integers(0, 3), st.booleans())
def test_ngram_count(text, n_min, extra, boundaries):
    n_max = n_min + extra
    grams = char_ngrams(text, n_min, n_max, boundaries)
    expected = 0
    for w in text.split():
        L = len(w) + (2 if boundaries else 0)
        expected += sum(max(L - n + 1, 0) for n in range(n_min, n_max + 1))
    assert len(grams) == expected
    assert all(n_min <= len(g) <= n_max for g in grams)
