from __future__ import annotations

import numpy as np

from ..features import NgramSpec, Vectorizer


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def check_labels(labels) -> list[str]:
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise ValueError(f"need at least two labels to train, got {classes}")
    return classes


class NgramClassifier:
    """Common prediction contract of all n-gram models.

    ``labels`` are kept sorted, so ``argmax`` ties resolve to the
    lexicographically smallest label.
    """

    kind = "base"

    def __init__(self, labels, spec: NgramSpec, vocabulary=None):
        self.labels = list(labels)
        if self.labels != sorted(self.labels):
            raise ValueError("labels must be sorted")
        self.spec = spec
        self.vectorizer = Vectorizer(spec, vocabulary)

    @property
    def vocabulary(self) -> dict[str, int]:
        return self.vectorizer.vocabulary

    def predict_proba(self, texts) -> np.ndarray:
        raise NotImplementedError

    def predict(self, text: str) -> tuple[str, float]:
        return self.predict_many([text])[0]

    def predict_many(self, texts) -> list[tuple[str, float]]:
        texts = list(texts)
        if not texts:
            return []
        P = self.predict_proba(texts)
        best = P.argmax(axis=1)
        return [(self.labels[j], float(P[i, j])) for i, j in enumerate(best)]

    def predict_labels(self, texts) -> list[str]:
        return [lab for lab, _ in self.predict_many(texts)]

    def __repr__(self):
        return (f"{type(self).__name__}({len(self.labels)} labels, "
                f"{self.vectorizer.n_features} features)")
