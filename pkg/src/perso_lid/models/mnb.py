"""Multinomial naive Bayes over character n-gram counts, with learned class
priors and no additive smoothing."""

from __future__ import annotations

import numpy as np

from ..features import NgramSpec, Vectorizer
from .base import NgramClassifier

MNB_NGRAMS = NgramSpec(2, 4, use_word_boundaries=False)


class MultinomialNB(NgramClassifier):
    """Unsmoothed multinomial naive Bayes.

    A feature with zero count in a class makes that class's likelihood
    exactly zero. Posteriors are the limit of additive smoothing as the
    pseudo-count goes to zero: the classes with the fewest zero-probability
    feature occurrences win, and among those the remaining factors decide.
    This keeps every prediction defined even when all classes have a zero.
    N-grams never seen in training are ignored.
    """

    kind = "mnb"

    def __init__(self, labels, spec: NgramSpec, vocabulary, class_counts, feature_counts):
        super().__init__(labels, spec, vocabulary)
        self.class_counts = np.asarray(class_counts, dtype=np.int64)
        self.feature_counts = np.asarray(feature_counts, dtype=np.int64)
        self._prepare()

    def _prepare(self):
        self.log_prior = np.log(self.class_counts / self.class_counts.sum())
        totals = self.feature_counts.sum(axis=1, keepdims=True).astype(np.float64)
        n_features = max(self.feature_counts.shape[1], 1)
        # with pseudo-count e a zero-count feature has probability e / N_c,
        # so beyond the power of e it still carries a -log N_c term; a class
        # without any feature mass spreads e / (V e) = 1 / V over all features
        empty = totals == 0
        zero = (self.feature_counts == 0) & ~empty
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = np.log(self.feature_counts / np.where(empty, 1.0, totals))
        logp = np.where(zero, -np.log(np.where(empty, 1.0, totals)), logp)
        logp = np.where(empty, -np.log(n_features), logp)
        self.zero_mask = zero.astype(np.float64)
        self.log_likelihood = logp

    @property
    def priors(self) -> np.ndarray:
        return np.exp(self.log_prior)

    def joint_scores(self, texts) -> tuple[np.ndarray, np.ndarray]:
        """(zero-feature counts, finite log joint scores), both (n, C)."""
        X = self.vectorizer.transform(texts)
        zeros = np.asarray(X @ self.zero_mask.T)
        scores = np.asarray(X @ self.log_likelihood.T) + self.log_prior
        return zeros, scores

    def predict_proba(self, texts) -> np.ndarray:
        zeros, scores = self.joint_scores(texts)
        live = zeros == zeros.min(axis=1, keepdims=True)
        scores = np.where(live, scores, -np.inf)
        scores -= scores.max(axis=1, keepdims=True)
        e = np.exp(scores)
        return e / e.sum(axis=1, keepdims=True)


def train_mnb(texts, labels, spec: NgramSpec = MNB_NGRAMS) -> MultinomialNB:
    texts = list(texts)
    labels = list(labels)
    classes = sorted(set(labels))
    if not classes:
        raise ValueError("empty training set")
    vec = Vectorizer(spec).fit(texts)
    X = vec.transform(texts)
    y = np.array([classes.index(lab) for lab in labels])
    class_counts = np.bincount(y, minlength=len(classes))
    if (class_counts == 0).any():
        raise ValueError("every label needs at least one training sentence")
    feature_counts = np.zeros((len(classes), X.shape[1]), dtype=np.int64)
    for c in range(len(classes)):
        feature_counts[c] = np.asarray(X[y == c].sum(axis=0)).ravel().astype(np.int64)
    return MultinomialNB(classes, spec, vec.vocabulary, class_counts, feature_counts)
