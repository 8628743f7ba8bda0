"""Character n-gram features."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np
import scipy.sparse as sp

FNV_OFFSET = 2166136261
FNV_PRIME = 16777619


@dataclass(frozen=True)
class NgramSpec:
    n_min: int = 2
    n_max: int = 4
    use_word_boundaries: bool = False
    hash_buckets: int | None = None

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max <= 8:
            raise ValueError(f"need 1 <= n_min <= n_max <= 8, got {self.n_min}, {self.n_max}")
        if self.hash_buckets is not None and self.hash_buckets < 1:
            raise ValueError("hash_buckets must be positive")

    def to_dict(self):
        return asdict(self)


def fnv1a(s: str) -> int:
    """32-bit FNV-1a over the UTF-8 bytes of ``s``."""
    h = FNV_OFFSET
    for byte in s.encode("utf-8"):
        h = ((h ^ byte) * FNV_PRIME) & 0xFFFFFFFF
    return h


def char_ngrams(text: str, n_min: int, n_max: int, boundaries: bool) -> list[str]:
    out = []
    for word in text.split():
        if boundaries:
            word = f"<{word}>"
        L = len(word)
        for n in range(n_min, n_max + 1):
            for i in range(L - n + 1):
                out.append(word[i:i + n])
    return out


def extract_char_ngrams(text: str, spec: NgramSpec) -> list:
    """All n-grams of every whitespace-delimited word, with multiplicity.

    Features are strings, or bucket ids ``fnv1a(ngram) % hash_buckets``
    when hashing is enabled.
    """
    grams = char_ngrams(text, spec.n_min, spec.n_max, spec.use_word_boundaries)
    if spec.hash_buckets:
        return [fnv1a(g) % spec.hash_buckets for g in grams]
    return grams


class Vectorizer:
    """Maps texts to sparse n-gram count rows over a fixed feature index."""

    def __init__(self, spec: NgramSpec, vocabulary=None):
        self.spec = spec
        self.vocabulary: dict[str, int] = dict(vocabulary or {})

    @property
    def n_features(self) -> int:
        return self.spec.hash_buckets or len(self.vocabulary)

    def fit(self, texts, max_features: int | None = None) -> "Vectorizer":
        if self.spec.hash_buckets:
            return self
        counts: Counter = Counter()
        for t in texts:
            counts.update(extract_char_ngrams(t, self.spec))
        grams = sorted(counts)
        if max_features is not None and len(grams) > max_features:
            grams = sorted(sorted(grams, key=lambda g: (-counts[g], g))[:max_features])
        self.vocabulary = {g: i for i, g in enumerate(grams)}
        return self

    def ids(self, text: str) -> Counter:
        """Feature id -> count for one text; unknown n-grams are dropped."""
        feats = extract_char_ngrams(text, self.spec)
        if self.spec.hash_buckets:
            return Counter(feats)
        vocab = self.vocabulary
        return Counter(vocab[g] for g in feats if g in vocab)

    def transform(self, texts) -> sp.csr_matrix:
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for t in texts:
            c = self.ids(t)
            keys = sorted(c)
            indices.extend(keys)
            data.extend(c[k] for k in keys)
            indptr.append(len(indices))
        return sp.csr_matrix(
            (np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int64),
             np.asarray(indptr, dtype=np.int64)),
            shape=(len(indptr) - 1, self.n_features))
