"""Character n-gram classifiers sharing one prediction contract."""

from .base import NgramClassifier, softmax
from .io import (ModelFormatError, UnsupportedVersionError, from_bytes, load_model,
                 save_model, to_bytes)
from .mlp import MLP, MLP_NGRAMS, MLPHyper, train_mlp
from .mnb import MNB_NGRAMS, MultinomialNB, train_mnb
from .subword import SUBWORD_NGRAMS, SubwordHyper, SubwordLinear, train_subword_linear

KINDS = ("mnb", "mlp", "subword_linear")


def train_model(kind: str, texts, labels, seed: int = 0, spec=None, **hyper):
    """Dispatch on ``kind``; ``hyper`` overrides that kind's defaults."""
    if kind == "mnb":
        if hyper:
            raise ValueError(f"mnb takes no hyperparameters, got {sorted(hyper)}")
        return train_mnb(texts, labels, spec or MNB_NGRAMS)
    if kind in ("subword_linear", "subword"):
        return train_subword_linear(texts, labels, SubwordHyper(seed=seed, **hyper),
                                    spec or SUBWORD_NGRAMS)
    if kind == "mlp":
        return train_mlp(texts, labels, MLPHyper(seed=seed, **hyper), spec or MLP_NGRAMS)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {KINDS}")


__all__ = [
    "KINDS", "MLP", "MLPHyper", "MLP_NGRAMS", "MNB_NGRAMS", "ModelFormatError",
    "MultinomialNB", "NgramClassifier", "SUBWORD_NGRAMS", "SubwordHyper", "SubwordLinear",
    "UnsupportedVersionError", "from_bytes", "load_model", "save_model", "softmax",
    "to_bytes", "train_mlp", "train_mnb", "train_model", "train_subword_linear",
]
