import struct
import zlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import bayes_posterior, numeric_grad, random_corpus, relative_error

from perso_lid.features import NgramSpec, Vectorizer
from perso_lid.models import (MLPHyper, ModelFormatError, SubwordHyper, UnsupportedVersionError,
                              from_bytes, load_model, save_model, to_bytes, train_mlp, train_mnb,
                              train_model, train_subword_linear)
from perso_lid.models import mlp as mlp_mod
from perso_lid.models import subword as sw
from perso_lid.models.io import MAGIC, pack

BIGRAMS = NgramSpec(2, 2, False)


def separable(n=200, seed=0):
    """Two toy languages over disjoint alphabets."""
    rng = np.random.default_rng(seed)
    texts, labels = [], []
    for lab, alpha in (("xa", "ابتث"), ("xb", "سشصض")):
        for _ in range(n):
            words = ["".join(rng.choice(list(alpha), size=rng.integers(2, 6)))
                     for _ in range(rng.integers(1, 5))]
            texts.append(" ".join(words))
            labels.append(lab)
    return texts, labels


@pytest.fixture(scope="module")
def sep():
    return separable()


class TestMNB:
    def test_toy_posterior_one(self):
        m = train_mnb(["aa", "bb"], ["A", "B"], BIGRAMS)
        assert m.predict("aa") == ("A", 1.0)

    def test_prior(self):
        m = train_mnb(["aa", "ab", "ba", "bb"], ["A", "A", "A", "B"], BIGRAMS)
        assert m.priors[0] == pytest.approx(0.75)
        label, p = m.predict("")
        assert label == "A" and p == pytest.approx(0.75)

    def test_empty_training_set(self):
        with pytest.raises(ValueError):
            train_mnb([], [], BIGRAMS)

    def test_likelihoods_sum_to_one(self):
        texts, labels = random_corpus(np.random.default_rng(3))
        m = train_mnb(texts, labels, BIGRAMS)
        probs = m.feature_counts / m.feature_counts.sum(axis=1, keepdims=True)
        assert np.allclose(probs.sum(axis=1), 1.0)
        assert m.priors.sum() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_bayes_oracle(self, seed):
        rng = np.random.default_rng(100 + seed)
        texts, labels = random_corpus(rng)
        m = train_mnb(texts, labels, BIGRAMS)
        queries, _ = random_corpus(rng)
        P = m.predict_proba(queries)
        for row, q in zip(P, queries):
            oracle = bayes_posterior(texts, labels, q)
            assert np.allclose(row, [oracle[c] for c in m.labels], atol=1e-9, rtol=0)

    @given(st.integers(0, 10_000), st.floats(0.01, 100))
    def test_argmax_invariant_to_score_scaling(self, seed, scale):
        rng = np.random.default_rng(seed)
        texts, labels = random_corpus(rng)
        m = train_mnb(texts, labels, BIGRAMS)
        queries, _ = random_corpus(rng)
        zeros, scores = m.joint_scores(queries)
        live = zeros == zeros.min(axis=1, keepdims=True)
        a = np.where(live, scores, -np.inf).argmax(axis=1)
        b = np.where(live, scores * scale, -np.inf).argmax(axis=1)
        assert (a == b).all()
        assert [m.labels[i] for i in a] == m.predict_labels(queries)

    def test_rejects_hyper(self):
        with pytest.raises(ValueError):
            train_model("mnb", ["aa", "bb"], ["A", "B"], dim=3)


class TestSubword:
    def test_separable_training_accuracy(self, sep):
        texts, labels = sep
        m = train_subword_linear(texts, labels)
        assert m.predict_labels(texts) == labels

    def test_hs_separable(self, sep):
        texts, labels = sep
        m = train_subword_linear(texts, labels, SubwordHyper(loss="hs", epochs=5))
        assert m.predict_labels(texts) == labels

    def test_single_label(self):
        with pytest.raises(ValueError):
            train_subword_linear(["ab", "ba"], ["x", "x"])

    def test_empty_input_uses_bias(self, sep):
        texts, labels = sep
        m = train_subword_linear(texts, labels, SubwordHyper(epochs=2))
        P = m.predict_proba([""])
        expected = np.exp(m.bias - m.bias.max())
        assert np.allclose(P[0], expected / expected.sum())

    def test_huffman_tree_is_a_distribution(self):
        mask, code = sw.huffman_tree([5, 1, 3, 3, 2])
        W = np.random.default_rng(0).normal(size=(4, 3))
        H = np.random.default_rng(1).normal(size=(6, 3))
        P = np.exp(sw.output_log_proba(H, W, np.zeros(4), (mask, code)))
        assert np.allclose(P.sum(axis=1), 1.0)
        # the most frequent label gets the shortest path
        depth = mask.sum(axis=1)
        assert depth[0] == depth.min()

    @pytest.mark.parametrize("loss", ["softmax", "hs"])
    def test_gradient(self, loss):
        rng = np.random.default_rng(7)
        X = _random_counts(rng, 6, 9)
        y = rng.integers(3, size=6)
        # hierarchical softmax scores the C - 1 inner nodes of the tree
        rows = 2 if loss == "hs" else 3
        p = {"E": rng.normal(size=(9, 4)), "W": rng.normal(size=(rows, 4)),
             "b": rng.normal(size=rows)}
        tree = sw.huffman_tree([4, 2, 1]) if loss == "hs" else None
        _, grads = sw.loss_and_grad(p, X, y, tree)
        num = numeric_grad(lambda: sw.loss_and_grad(p, X, y, tree)[0], p)
        for k in p:
            assert relative_error(grads[k], num[k]) < 1e-4

    def test_deterministic(self, sep):
        texts, labels = sep
        a = train_subword_linear(texts, labels, SubwordHyper(epochs=3, seed=4))
        b = train_subword_linear(texts, labels, SubwordHyper(epochs=3, seed=4))
        assert all(np.array_equal(a.params()[k], b.params()[k]) for k in a.params())


class TestMLP:
    def test_separable_training_accuracy(self, sep):
        texts, labels = sep
        m = train_mlp(texts, labels, MLPHyper(hidden=50, max_iter=60))
        acc = np.mean(np.array(m.predict_labels(texts)) == np.array(labels))
        assert acc >= 0.99

    def test_gradient(self):
        rng = np.random.default_rng(8)
        X = _random_counts(rng, 5, 7)
        y = rng.integers(3, size=5)
        p = mlp_mod.init_params(7, 6, 3, rng)
        p = {k: v.astype(np.float64) + 0.1 for k, v in p.items()}
        _, grads = mlp_mod.loss_and_grad(p, X, y, alpha=1e-2)
        num = numeric_grad(lambda: mlp_mod.loss_and_grad(p, X, y, alpha=1e-2)[0], p)
        for k in p:
            assert relative_error(grads[k], num[k]) < 1e-4

    def test_deterministic(self, sep):
        texts, labels = sep
        h = MLPHyper(hidden=8, max_iter=5, seed=2)
        a, b = train_mlp(texts, labels, h), train_mlp(texts, labels, h)
        assert all(np.array_equal(a.params()[k], b.params()[k]) for k in a.params())


def _random_counts(rng, n, d):
    import scipy.sparse as sp
    X = rng.integers(0, 3, size=(n, d)).astype(np.float64)
    X[X.sum(axis=1) == 0, 0] = 1.0
    return sp.csr_matrix(X)


@pytest.fixture(scope="module")
def trained(sep):
    texts, labels = sep
    return {
        "mnb": train_model("mnb", texts, labels),
        "subword_linear": train_model("subword_linear", texts, labels, epochs=3),
        "subword_hs": train_model("subword", texts, labels, epochs=3, loss="hs"),
        "mlp": train_model("mlp", texts, labels, hidden=16, max_iter=5),
    }


@pytest.mark.parametrize("name", ["mnb", "subword_linear", "subword_hs", "mlp"])
def test_probabilities_sum_to_one(trained, sep, name):
    P = trained[name].predict_proba(sep[0][:50] + ["", "zzz"])
    assert np.allclose(P.sum(axis=1), 1.0, atol=1e-9)
    assert (P >= 0).all() and (P <= 1).all()


@pytest.mark.parametrize("name", ["mnb", "subword_linear", "subword_hs", "mlp"])
def test_save_load_roundtrip(trained, sep, tmp_path, name):
    model = trained[name]
    path = tmp_path / "m.plid"
    save_model(model, path)
    again = load_model(path)
    probe = sep[0][:40] + ["", "ابسش"]
    assert again.predict_many(probe) == model.predict_many(probe)
    assert np.array_equal(again.predict_proba(probe), model.predict_proba(probe))
    assert to_bytes(again) == path.read_bytes()
    assert not (tmp_path / "m.plid.tmp").exists()


def test_corrupt_file(trained):
    data = bytearray(to_bytes(trained["mnb"]))
    data[len(data) // 2] ^= 0xFF
    with pytest.raises(ModelFormatError, match="checksum"):
        from_bytes(bytes(data))
    with pytest.raises(ModelFormatError):
        from_bytes(bytes(data[:20]))
    with pytest.raises(ModelFormatError, match="magic"):
        from_bytes(b"not a model at all")


def test_old_version(trained):
    data = bytearray(to_bytes(trained["mnb"]))
    struct.pack_into("<H", data, len(MAGIC), 0)
    body = bytes(data[:-4])
    data = body + struct.pack("<I", zlib.crc32(body))
    with pytest.raises(UnsupportedVersionError):
        from_bytes(data)


def test_unknown_kind():
    with pytest.raises(ModelFormatError, match="kind"):
        from_bytes(pack("forest", {}, {}))


def test_unknown_kind_training():
    with pytest.raises(ValueError, match="unknown model kind"):
        train_model("forest", ["a"], ["b"])
