"""Subword linear classifier: the mean of character n-gram embeddings feeds a
linear output layer, trained with plain SGD one sentence at a time.

The output layer is either a full softmax or a hierarchical softmax, where
each label is a leaf of a Huffman tree built from label frequencies and
every internal node is a binary logistic unit.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
import scipy.sparse as sp
from numba import njit

from ..features import NgramSpec, Vectorizer
from .base import NgramClassifier, check_labels, softmax

SUBWORD_NGRAMS = NgramSpec(2, 6, use_word_boundaries=True)


@dataclass(frozen=True)
class SubwordHyper:
    dim: int = 64
    lr: float = 1.0
    epochs: int = 25
    seed: int = 0
    loss: str = "softmax"  # or "hs", hierarchical softmax over a Huffman tree

    def __post_init__(self):
        if self.dim < 1 or self.epochs < 1 or not self.lr > 0:
            raise ValueError(f"bad hyperparameters: {self}")
        if self.loss not in ("softmax", "hs"):
            raise ValueError(f"loss must be 'softmax' or 'hs', got {self.loss!r}")

    def to_dict(self):
        return asdict(self)


def mean_rows(X: sp.csr_matrix) -> sp.csr_matrix:
    """Scale each row to sum to one (empty rows stay empty)."""
    X = sp.csr_matrix(X, dtype=np.float64, copy=True)
    sums = np.asarray(X.sum(axis=1)).ravel()
    sums[sums == 0] = 1.0
    X.data /= np.repeat(sums, np.diff(X.indptr))
    return X


def huffman_tree(counts) -> tuple[np.ndarray, np.ndarray]:
    """Paths of a Huffman tree over labels with the given frequencies.

    Returns ``(mask, code)``, both (C, C-1): ``mask[c, n]`` is 1 if internal
    node n lies on label c's path and ``code[c, n]`` is the branch taken
    there. Construction follows the usual two-queue merge over labels in
    descending frequency (stable), with the second pick of each merge on
    the 1 branch.
    """
    counts = np.asarray(counts, dtype=np.float64)
    C = len(counts)
    order = np.argsort(-counts, kind="stable")
    cnt = np.concatenate([counts[order], np.full(C - 1, 1e15)])
    parent = np.full(2 * C - 1, -1)
    branch = np.zeros(2 * C - 1, dtype=np.int64)
    leaf, node = C - 1, C
    for i in range(C, 2 * C - 1):
        picks = []
        for _ in range(2):
            if leaf >= 0 and cnt[leaf] < cnt[node]:
                picks.append(leaf)
                leaf -= 1
            else:
                picks.append(node)
                node += 1
        cnt[i] = cnt[picks[0]] + cnt[picks[1]]
        parent[picks] = i
        branch[picks[1]] = 1
    mask = np.zeros((C, C - 1), dtype=np.int64)
    code = np.zeros((C, C - 1), dtype=np.int64)
    for rank, label in enumerate(order):
        j = rank
        while parent[j] != -1:
            mask[label, parent[j] - C] = 1
            code[label, parent[j] - C] = branch[j]
            j = parent[j]
    return mask, code


def _log_sigmoid(z):
    return -np.logaddexp(0.0, -z)


def output_log_proba(H, W, b, tree=None) -> np.ndarray:
    """Log label probabilities from sentence vectors ``H``."""
    Z = H @ W.T + b
    if tree is None:
        Z = Z - Z.max(axis=1, keepdims=True)
        return Z - np.log(np.exp(Z).sum(axis=1, keepdims=True))
    mask, code = tree
    return _log_sigmoid(Z) @ (mask * code).T + _log_sigmoid(-Z) @ (mask * (1 - code)).T


class SubwordLinear(NgramClassifier):
    """Sentence vector = mean embedding of its n-grams, scored by W h + b.

    A sentence with no known n-gram has h = 0, so it falls back to the
    argmax of the output biases.
    """

    kind = "subword_linear"

    def __init__(self, labels, spec: NgramSpec, vocabulary, embeddings, weights, bias,
                 hyper: SubwordHyper | None = None, tree=None):
        super().__init__(labels, spec, vocabulary)
        self.embeddings = np.asarray(embeddings, dtype=np.float32)
        self.weights = np.asarray(weights, dtype=np.float32)
        self.bias = np.asarray(bias, dtype=np.float32)
        self.hyper = hyper or SubwordHyper(dim=self.embeddings.shape[1])
        if (self.hyper.loss == "hs") != (tree is not None):
            raise ValueError("a Huffman tree is required exactly for the 'hs' loss")
        self.tree = None if tree is None else tuple(np.asarray(t, dtype=np.int64) for t in tree)

    def params(self) -> dict[str, np.ndarray]:
        out = {"E": self.embeddings, "W": self.weights, "b": self.bias}
        if self.tree is not None:
            out["tree_mask"], out["tree_code"] = self.tree
        return out

    def predict_proba(self, texts) -> np.ndarray:
        X = mean_rows(self.vectorizer.transform(texts))
        H = X @ self.embeddings.astype(np.float64)
        logp = output_log_proba(H, self.weights.astype(np.float64),
                                self.bias.astype(np.float64), self.tree)
        P = np.exp(logp)
        return P / P.sum(axis=1, keepdims=True)


def loss_and_grad(params: dict, X: sp.csr_matrix, y: np.ndarray, tree=None):
    """Mean negative log-likelihood of a batch and its gradient.

    ``X`` holds raw n-gram counts; rows are averaged inside. Pass the
    Huffman ``tree`` for the hierarchical softmax.
    """
    E, W, b = params["E"], params["W"], params["b"]
    A = mean_rows(X)
    H = A @ E
    n = len(y)
    logp = output_log_proba(H, W, b, tree)
    loss = -logp[np.arange(n), y].mean()
    if tree is None:
        G = np.exp(logp)
        G[np.arange(n), y] -= 1.0
    else:
        mask, code = tree
        Z = H @ W.T + b
        G = mask[y] * (1.0 / (1.0 + np.exp(-Z)) - code[y])
    G /= n
    return loss, {"E": A.T @ (G @ W), "W": G.T @ H, "b": G.sum(axis=0)}


@njit(cache=True)
def _sgd(indptr, indices, weights, y, order, E, W, b, lr, paths, codes):
    """Per-sentence SGD. With ``paths`` empty the output is a full softmax;
    otherwise ``paths[c]`` lists label c's internal nodes (-1 padded)."""
    n_steps = order.size
    K, dim = W.shape
    hs = paths.shape[0] > 0
    h = np.empty(dim)
    g = np.empty(K)
    dh = np.empty(dim)
    t = 0
    for i in order.ravel():
        rate = lr * (1.0 - t / n_steps)
        t += 1
        h[:] = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            h += weights[k] * E[indices[k]]
        dh[:] = 0.0
        if hs:
            for d in range(paths.shape[1]):
                node = paths[y[i], d]
                if node < 0:
                    break
                z = b[node] + np.dot(W[node], h)
                gn = 1.0 / (1.0 + np.exp(-z)) - codes[y[i], d]
                dh += gn * W[node]
                W[node] -= rate * gn * h
                b[node] -= rate * gn
        else:
            for c in range(K):
                g[c] = b[c] + np.dot(W[c], h)
            g -= g.max()
            g[:] = np.exp(g)
            g /= g.sum()
            g[y[i]] -= 1.0
            for c in range(K):
                dh += g[c] * W[c]
                W[c] -= rate * g[c] * h
                b[c] -= rate * g[c]
        for k in range(indptr[i], indptr[i + 1]):
            E[indices[k]] -= rate * weights[k] * dh


def _path_arrays(tree):
    mask, code = tree
    depth = int(mask.sum(axis=1).max())
    paths = np.full((mask.shape[0], depth), -1, dtype=np.int64)
    codes = np.zeros((mask.shape[0], depth), dtype=np.float64)
    for c in range(mask.shape[0]):
        nodes = np.flatnonzero(mask[c])
        paths[c, :len(nodes)] = nodes
        codes[c, :len(nodes)] = code[c, nodes]
    return paths, codes


def train_subword_linear(texts, labels, hyper: SubwordHyper = SubwordHyper(),
                         spec: NgramSpec = SUBWORD_NGRAMS) -> SubwordLinear:
    """SGD on per-sentence negative log-likelihood; the step size decays
    linearly from ``hyper.lr`` to zero over all epochs. Embeddings start
    uniform in [-1/dim, 1/dim] and the output layer at zero."""
    texts = list(texts)
    labels = list(labels)
    classes = check_labels(labels)
    vec = Vectorizer(spec).fit(texts)
    A = mean_rows(vec.transform(texts))
    index = {c: i for i, c in enumerate(classes)}
    y = np.array([index[lab] for lab in labels], dtype=np.int64)

    tree = None
    n_out = len(classes)
    paths, codes = np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0))
    if hyper.loss == "hs":
        tree = huffman_tree(np.bincount(y, minlength=len(classes)))
        paths, codes = _path_arrays(tree)
        n_out = len(classes) - 1

    rng = np.random.default_rng(hyper.seed)
    E = rng.uniform(-1.0 / hyper.dim, 1.0 / hyper.dim, size=(A.shape[1], hyper.dim))
    W = np.zeros((n_out, hyper.dim))
    b = np.zeros(n_out)
    order = np.stack([rng.permutation(len(y)) for _ in range(hyper.epochs)])
    _sgd(A.indptr.astype(np.int64), A.indices.astype(np.int64), A.data, y, order,
         E, W, b, float(hyper.lr), paths, codes)
    return SubwordLinear(classes, spec, vec.vocabulary, E, W, b, hyper, tree)
