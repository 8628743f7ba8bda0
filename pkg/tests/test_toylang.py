from perso_lid.profiles import load_profiles
from perso_lid.scriptmap import load_mappings, validate_table
from perso_lid.toylang import make_toy_world


def test_shape(small_world):
    assert small_world.languages == ["xda", "xdb", "xma", "xmb", "xmc", "xmd"]
    assert all(len(s) == 150 for s in small_world.corpus.values())
    assert len(small_world.tables) == 5


def test_deterministic():
    a, b = make_toy_world(seed=2, n_sentences=20), make_toy_world(seed=2, n_sentences=20)
    assert a.corpus == b.corpus and a.tables == b.tables


def test_tables_validate(small_world):
    for t in small_world.tables:
        assert validate_table(t, small_world.profiles).complete, t


def test_config_roundtrip(tmp_path, small_world):
    small_world.write_config(tmp_path)
    profiles = load_profiles(tmp_path / "profiles")
    assert profiles == small_world.profiles
    tables = load_mappings(tmp_path / "mappings", profiles)
    assert sorted(tables.values(), key=lambda t: (t.source_lang, t.target_lang)) == \
        sorted(small_world.tables, key=lambda t: (t.source_lang, t.target_lang))


def test_corpus_uses_own_letters(small_world):
    text = "".join(s.text for s in small_world.corpus["xma"])
    assert "ٹ" in text and "ٹ" not in "".join(s.text for s in small_world.corpus["xda"])
