"""Language identification for languages written in Perso-Arabic scripts.

The pipeline: script-aware normalization, synthetic "unconventional"
writing produced by mapping a language's script onto a dominant one,
character n-gram classifiers, and a root + expert hierarchical model that
resolves confusion between closely related languages.
"""

from .dataset import (Benchmark, Dataset, assemble, build_benchmark, read_dataset,
                      split_train_test, write_dataset)
from .evaluate import (EvaluationReport, ExternalPredictor, SignificanceResult, benchmark,
                       score, significance_test)
from .hier import (ClusterSet, ConfusionMatrix, HierarchicalModel, build_confusion,
                   detect_clusters, fit_hierarchical, load_clusters, model_confusion,
                   predict_hierarchical, save_clusters, train_hierarchical)
from .models import (load_model, save_model, train_mlp, train_mnb, train_model,
                     train_subword_linear)
from .normalize import Sentence, normalize_pipeline, normalize_text
from .profiles import LANGUAGES, LanguageProfile, builtin_profiles, get_profile
from .scriptmap import MappingRule, MappingTable, load_mappings
from .synth import NOISE_LEVELS, NoiseSpec, corrupt_corpus, corrupt_sentence

__version__ = "0.1.0"

__all__ = [
    "Benchmark", "ClusterSet", "ConfusionMatrix", "Dataset", "EvaluationReport",
    "ExternalPredictor", "HierarchicalModel", "LANGUAGES", "LanguageProfile", "MappingRule",
    "MappingTable", "NOISE_LEVELS", "NoiseSpec", "Sentence", "SignificanceResult", "assemble",
    "benchmark", "build_benchmark", "build_confusion", "builtin_profiles", "corrupt_corpus",
    "corrupt_sentence", "detect_clusters", "fit_hierarchical", "get_profile", "load_clusters",
    "load_mappings", "load_model", "model_confusion", "normalize_pipeline", "normalize_text",
    "predict_hierarchical", "read_dataset", "save_clusters", "save_model", "score",
    "significance_test", "split_train_test", "train_hierarchical", "train_mlp", "train_mnb",
    "train_model", "train_subword_linear", "write_dataset",
]
