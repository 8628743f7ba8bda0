"""Scoring, benchmark tables and the root-vs-hierarchical Z-test."""

from __future__ import annotations

import math
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from scipy.stats import norm

from .dataset import mode_level
from .hier import ConfusionMatrix, build_confusion

ABSTAIN = "<none>"


@dataclass(frozen=True)
class ClassScore:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvaluationReport:
    per_class: dict[str, ClassScore]
    confusion: ConfusionMatrix
    n: int
    mode: str | None = None

    @property
    def noise_level(self) -> int | None:
        return mode_level(self.mode) if self.mode else None

    def _macro(self, attr: str) -> float:
        vals = [getattr(s, attr) for s in self.per_class.values()]
        return sum(vals) / len(vals)

    @property
    def macro_precision(self) -> float:
        return self._macro("precision")

    @property
    def macro_recall(self) -> float:
        return self._macro("recall")

    @property
    def macro_f1(self) -> float:
        return self._macro("f1")


def score(predictions, gold, mode: str | None = None) -> EvaluationReport:
    """Per-class P/R/F1 and macro averages over the classes present in gold.

    Labels that are predicted but never occur in gold are not averaged, so
    abstentions and unsupported languages only lower the recall of the true
    classes.
    """
    predictions, gold = list(predictions), list(gold)
    if len(predictions) != len(gold):
        raise ValueError(f"{len(predictions)} predictions for {len(gold)} gold labels")
    if not gold:
        raise ValueError("nothing to score")
    cm = build_confusion(predictions, gold)
    idx = {lab: i for i, lab in enumerate(cm.labels)}
    row = cm.counts.sum(axis=1)
    col = cm.counts.sum(axis=0)
    per_class = {}
    for lab in sorted(set(gold)):
        i = idx[lab]
        tp = int(cm.counts[i, i])
        p = tp / row[i] if row[i] else 0.0
        r = tp / col[i]
        f = 2 * p * r / (p + r) if p + r else 0.0
        per_class[lab] = ClassScore(float(p), float(r), float(f), int(col[i]))
    return EvaluationReport(per_class, cm, len(gold), mode)


@dataclass(frozen=True)
class SignificanceResult:
    f_root: float
    f_hier: float
    n: int
    alpha: float
    upper_bound: float

    @property
    def delta(self) -> float:
        return self.f_hier - self.f_root

    @property
    def significant(self) -> bool:
        return self.f_hier > self.upper_bound


def significance_test(f_root: float, f_hier: float, n: int, alpha: float = 0.01
                      ) -> SignificanceResult:
    """One-tailed Z-test: is ``f_hier`` strictly above the upper end of a
    (1 - alpha) confidence interval around ``f_root``?

    The interval uses the binomial variance f(1 - f)/n, which relies on the
    normal approximation and therefore needs more than 30 samples.
    """
    if n <= 30:
        raise ValueError(f"n={n}: the normal approximation needs more than 30 samples")
    for f in (f_root, f_hier):
        if not 0.0 <= f <= 1.0:
            raise ValueError(f"F1 score {f} outside [0, 1]")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    z = norm.ppf(1.0 - alpha)
    bound = f_root + z * math.sqrt(f_root * (1.0 - f_root) / n)
    return SignificanceResult(f_root, f_hier, n, alpha, bound)


class ExternalPredictor:
    """Wraps a command that reads one sentence per line on stdin and answers
    each with one line holding a language code (empty line = abstain)."""

    def __init__(self, command: list[str], labels=None, name: str | None = None):
        self.command = list(command)
        self.name = name or Path(self.command[0]).name
        self.supported = set(labels) if labels else None

    def predict_labels(self, texts) -> list[str]:
        texts = [t.replace("\n", " ") for t in texts]
        proc = subprocess.run(self.command, input="".join(t + "\n" for t in texts),
                              capture_output=True, text=True, encoding="utf-8", check=True)
        answers = proc.stdout.splitlines()
        if len(answers) != len(texts):
            raise RuntimeError(f"{self.name}: {len(answers)} answers for {len(texts)} lines")
        out = []
        for a in answers:
            a = a.split("\t", 1)[0].strip()
            if not a or (self.supported is not None and a not in self.supported):
                a = ABSTAIN
            out.append(a)
        return out


@dataclass
class BenchmarkResult:
    reports: dict[tuple[str, str], EvaluationReport] = field(default_factory=dict)
    significance: dict[str, SignificanceResult] = field(default_factory=dict)

    def summary_rows(self) -> list[list]:
        rows = [["model", "mode", "precision", "recall", "f1", "n"]]
        for (model, mode), r in self.reports.items():
            rows.append([model, mode, r.macro_precision, r.macro_recall, r.macro_f1, r.n])
        return rows

    def language_rows(self) -> list[list]:
        models = list(dict.fromkeys(m for m, _ in self.reports))
        modes = list(dict.fromkeys(d for _, d in self.reports))
        rows = [["mode", "language"] + models]
        for mode in modes:
            langs = sorted({lab for (m, d), r in self.reports.items() if d == mode
                            for lab in r.per_class})
            for lang in langs:
                row = [mode, lang]
                for m in models:
                    r = self.reports.get((m, mode))
                    s = r.per_class.get(lang) if r else None
                    row.append(s.f1 if s else "")
                rows.append(row)
        return rows

    def significance_rows(self) -> list[list]:
        rows = [["mode", "n", "f_root", "f_hier", "delta", "upper_bound", "significant"]]
        for mode, s in self.significance.items():
            rows.append([mode, s.n, s.f_root, s.f_hier, s.delta, s.upper_bound,
                         "yes" if s.significant else "no"])
        return rows

    def tables(self) -> dict[str, list[list]]:
        out = {"summary": self.summary_rows(), "languages": self.language_rows()}
        if self.significance:
            out["significance"] = self.significance_rows()
        return out

    def write_tsv(self, out_dir) -> list[Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for name, rows in self.tables().items():
            p = out_dir / f"{name}.tsv"
            p.write_text("".join("\t".join(_fmt(x) for x in r) + "\n" for r in rows),
                         encoding="utf-8")
            paths.append(p)
        return paths

    def to_text(self) -> str:
        parts = []
        for name, rows in self.tables().items():
            cells = [[_fmt(x) for x in r] for r in rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
            lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
            parts.append(f"== {name} ==\n" + "\n".join(lines))
        return "\n\n".join(parts) + "\n"


def _fmt(x) -> str:
    return f"{x:.4f}" if isinstance(x, float) else str(x)


def _predict_labels(model, texts) -> list[str]:
    return list(model.predict_labels(texts))


def benchmark(models: dict, datasets: dict, pair: tuple[str, str] | None = None,
              alpha: float = 0.01) -> BenchmarkResult:
    """Score every model on every dataset mode.

    ``datasets`` maps mode names to objects with ``texts`` and ``labels``.
    With ``pair=(root, hierarchical)`` a significance row is added per mode.
    """
    if not models or not datasets:
        raise ValueError("need at least one model and one dataset")
    if pair is not None and not set(pair) <= set(models):
        raise ValueError(f"significance pair {pair} not among models {sorted(models)}")
    result = BenchmarkResult()
    for mode, ds in datasets.items():
        if ds is None:
            raise ValueError(f"dataset for mode {mode} is missing")
        texts, gold = list(ds.texts), list(ds.labels)
        for name, model in models.items():
            result.reports[(name, mode)] = score(_predict_labels(model, texts), gold, mode)
        if pair is not None:
            root, hier = (result.reports[(p, mode)] for p in pair)
            result.significance[mode] = significance_test(root.macro_f1, hier.macro_f1,
                                                          len(gold), alpha)
    return result
