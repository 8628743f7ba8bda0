"""Independent reference computations the tests compare against."""

from fractions import Fraction

import numpy as np

# pseudo-count standing in for the zero limit of additive smoothing
EPSILON = Fraction(1, 10**40)


def bigrams(text):
    return [w[i:i + 2] for w in text.split() for i in range(len(w) - 1)]


def bayes_posterior(train_texts, train_labels, text):
    """Exact posterior of an additively smoothed multinomial NB with a
    vanishing pseudo-count, by explicit enumeration in rational arithmetic.
    N-grams never seen in training are dropped."""
    classes = sorted(set(train_labels))
    vocab = sorted({g for t in train_texts for g in bigrams(t)})
    V = len(vocab)
    counts = {c: {} for c in classes}
    docs = {c: 0 for c in classes}
    for t, c in zip(train_texts, train_labels):
        docs[c] += 1
        for g in bigrams(t):
            counts[c][g] = counts[c].get(g, 0) + 1
    grams = [g for g in bigrams(text) if g in vocab]
    joint = {}
    for c in classes:
        total = sum(counts[c].values())
        p = Fraction(docs[c], len(train_texts))
        for g in grams:
            p *= (counts[c].get(g, 0) + EPSILON) / (total + V * EPSILON)
        joint[c] = p
    z = sum(joint.values())
    return {c: float(joint[c] / z) for c in classes}


def random_corpus(rng, max_classes=5, max_sentences=50, alphabet="abcdef"):
    n_classes = int(rng.integers(2, max_classes + 1))
    n = int(rng.integers(n_classes, max_sentences + 1))
    labels = [f"c{k}" for k in range(n_classes)] + \
        [f"c{k}" for k in rng.integers(n_classes, size=n - n_classes)]
    texts = []
    for k in range(n):
        # skew each class towards part of the alphabet
        c = int(labels[k][1:])
        weights = np.ones(len(alphabet))
        weights[c % len(alphabet)] += 3.0
        weights /= weights.sum()
        words = ["".join(rng.choice(list(alphabet), size=rng.integers(1, 6), p=weights))
                 for _ in range(rng.integers(1, 5))]
        texts.append(" ".join(words))
    return texts, labels


def numeric_grad(f, params, eps=1e-4):
    """Central finite differences of scalar ``f`` for every array in ``params``."""
    out = {}
    for name, arr in params.items():
        g = np.zeros_like(arr)
        it = np.nditer(arr, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            old = arr[idx]
            arr[idx] = old + eps
            up = f()
            arr[idx] = old - eps
            down = f()
            arr[idx] = old
            g[idx] = (up - down) / (2 * eps)
        out[name] = g
    return out


def relative_error(a, b):
    denom = max(np.linalg.norm(a), np.linalg.norm(b))
    return 0.0 if denom == 0 else float(np.linalg.norm(a - b) / denom)
