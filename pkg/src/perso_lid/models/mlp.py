"""One-hidden-layer perceptron over n-gram counts, trained with Adam in the
manner of scikit-learn's MLPClassifier."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

import numpy as np
import scipy.sparse as sp

from ..features import NgramSpec, Vectorizer
from .base import NgramClassifier, check_labels, softmax

log = logging.getLogger(__name__)

MLP_NGRAMS = NgramSpec(2, 4, use_word_boundaries=False)


@dataclass(frozen=True)
class MLPHyper:
    hidden: int = 500
    max_iter: int = 500
    batch: int = 1000
    lr: float = 1e-3
    alpha: float = 1e-4  # L2 penalty
    tol: float = 1e-4
    n_iter_no_change: int = 10
    max_features: int | None = 50000
    seed: int = 0

    def __post_init__(self):
        if self.hidden < 1 or self.max_iter < 1 or self.batch < 1 or not self.lr > 0:
            raise ValueError(f"bad hyperparameters: {self}")

    def to_dict(self):
        return asdict(self)


class MLP(NgramClassifier):
    kind = "mlp"

    def __init__(self, labels, spec: NgramSpec, vocabulary, W1, b1, W2, b2,
                 hyper: MLPHyper | None = None):
        super().__init__(labels, spec, vocabulary)
        self.W1 = np.asarray(W1, dtype=np.float32)
        self.b1 = np.asarray(b1, dtype=np.float32)
        self.W2 = np.asarray(W2, dtype=np.float32)
        self.b2 = np.asarray(b2, dtype=np.float32)
        self.hyper = hyper or MLPHyper(hidden=self.W1.shape[1])

    def params(self) -> dict[str, np.ndarray]:
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": self.b2}

    def predict_proba(self, texts) -> np.ndarray:
        p = {k: v.astype(np.float64) for k, v in self.params().items()}
        return _forward(p, self.vectorizer.transform(texts))[1]


def _forward(p, X):
    hidden = np.maximum(X @ p["W1"] + p["b1"], 0.0)
    return hidden, softmax(hidden @ p["W2"] + p["b2"])


def loss_and_grad(params: dict, X: sp.csr_matrix, y: np.ndarray, alpha: float = 1e-4):
    """Mean cross-entropy plus ``alpha / (2n) * ||W||^2`` and its gradient."""
    n = len(y)
    hidden, P = _forward(params, X)
    W1, W2 = params["W1"], params["W2"]
    loss = -np.log(P[np.arange(n), y]).mean()
    loss += 0.5 * alpha * (np.sum(W1 * W1) + np.sum(W2 * W2)) / n
    G = P.copy()
    G[np.arange(n), y] -= 1.0
    G /= n
    dhidden = (G @ W2.T) * (hidden > 0)
    grads = {
        "W1": np.asarray(X.T @ dhidden) + alpha * W1 / n,
        "b1": dhidden.sum(axis=0),
        "W2": hidden.T @ G + alpha * W2 / n,
        "b2": G.sum(axis=0),
    }
    return loss, grads


def init_params(n_in: int, hidden: int, n_out: int, rng) -> dict[str, np.ndarray]:
    # Glorot uniform, as scikit-learn does for non-logistic activations
    p = {}
    for name, fan_in, fan_out in (("1", n_in, hidden), ("2", hidden, n_out)):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        p["W" + name] = rng.uniform(-bound, bound, (fan_in, fan_out))
        p["b" + name] = rng.uniform(-bound, bound, fan_out)
    return p


def train_mlp(texts, labels, hyper: MLPHyper = MLPHyper(),
              spec: NgramSpec = MLP_NGRAMS) -> MLP:
    """Mini-batch Adam on cross-entropy; stops after ``max_iter`` epochs or
    when the epoch loss fails to improve by ``tol`` for ``n_iter_no_change``
    consecutive epochs."""
    texts = list(texts)
    labels = list(labels)
    classes = check_labels(labels)
    vec = Vectorizer(spec).fit(texts, max_features=hyper.max_features)
    X = vec.transform(texts)
    index = {c: i for i, c in enumerate(classes)}
    y = np.array([index[lab] for lab in labels], dtype=np.int64)

    rng = np.random.default_rng(hyper.seed)
    params = init_params(X.shape[1], hyper.hidden, len(classes), rng)
    m = {k: np.zeros_like(v) for k, v in params.items()}
    v = {k: np.zeros_like(v) for k, v in params.items()}
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    batch = min(hyper.batch, len(y))
    best, stale, t = np.inf, 0, 0
    for epoch in range(hyper.max_iter):
        order = rng.permutation(len(y))
        total = 0.0
        for start in range(0, len(y), batch):
            idx = order[start:start + batch]
            loss, grads = loss_and_grad(params, X[idx], y[idx], hyper.alpha)
            total += loss * len(idx)
            t += 1
            step = hyper.lr * np.sqrt(1 - beta2 ** t) / (1 - beta1 ** t)
            for k, g in grads.items():
                m[k] = beta1 * m[k] + (1 - beta1) * g
                v[k] = beta2 * v[k] + (1 - beta2) * g * g
                params[k] -= step * m[k] / (np.sqrt(v[k]) + eps)
        total /= len(y)
        stale = stale + 1 if total > best - hyper.tol else 0
        best = min(best, total)
        if stale >= hyper.n_iter_no_change:
            log.info("mlp converged after %d epochs (loss %.5f)", epoch + 1, total)
            break
    return MLP(classes, spec, vec.vocabulary, params["W1"], params["b1"],
               params["W2"], params["b2"], hyper)
