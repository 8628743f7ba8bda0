"""Synthetic unconventional writing: corrupt clean sentences towards the
script of a dominant language at a controlled noise level."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, noisy_mode
from .normalize import Sentence
from .profiles import CONVENTIONAL_ONLY
from .scriptmap import HARAKAT, MappingTable, map_numeral, substitutable_positions

NOISE_LEVELS = (20, 40, 60, 80, 100)


@dataclass(frozen=True)
class NoiseSpec:
    level: int
    seed: int = 0
    dominant: str | None = None  # None: uniform choice per sentence
    allow_any_level: bool = False

    def __post_init__(self):
        if self.allow_any_level:
            if not 0 <= self.level <= 100:
                raise ValueError(f"noise level must be within 0..100, got {self.level}")
        elif self.level not in NOISE_LEVELS:
            raise ValueError(f"noise level must be one of {NOISE_LEVELS}, got {self.level}")


@dataclass(frozen=True)
class Corruption:
    text: str
    target_lang: str
    n_substitutable: int
    substituted: tuple[int, ...]

    @property
    def rate(self) -> float:
        return len(self.substituted) / self.n_substitutable if self.n_substitutable else 0.0


def n_substitutions(n_substitutable: int, level: int) -> int:
    # round half up, in exact integer arithmetic
    return (n_substitutable * level + 50) // 100


def corrupt_text(text: str, table: MappingTable, level: int, rng) -> Corruption:
    slots = substitutable_positions(text, table)
    k = n_substitutions(len(slots), level)
    replace = {}
    if k:
        chosen = np.sort(rng.choice(len(slots), size=k, replace=False))
        for c in chosen:
            idx, rules = slots[c]
            targets = list(dict.fromkeys(t for r in rules for t in r.substitutions))
            replace[idx] = targets[rng.integers(len(targets))]
    out = []
    for i, ch in enumerate(text):
        if i in replace:
            out.append(replace[i])
        elif level == 100 and ch in HARAKAT:
            continue
        elif level == 100 and table.numeral_randomization and "0" <= ch <= "9":
            out.append(map_numeral(ch, rng))
        else:
            out.append(ch)
    return Corruption("".join(out), table.target_lang, len(slots), tuple(sorted(replace)))


def _tables_for(lang: str, tables) -> dict[str, MappingTable]:
    if isinstance(tables, dict):
        tables = tables.values()
    return {t.target_lang: t for t in tables if t.source_lang == lang}


def choose_table(lang: str, tables, spec: NoiseSpec, rng) -> MappingTable:
    candidates = _tables_for(lang, tables)
    if not candidates:
        raise ValueError(f"no mapping table for language {lang!r}")
    if spec.dominant is not None:
        if spec.dominant not in candidates:
            raise ValueError(f"no {lang}->{spec.dominant} mapping table")
        return candidates[spec.dominant]
    keys = sorted(candidates)
    return candidates[keys[rng.integers(len(keys))]]


def corrupt_sentence(s: Sentence, tables, spec: NoiseSpec, rng=None,
                     trace: bool = False):
    """Substitute round_half_up(S * level / 100) of the S substitutable
    positions of ``s``, chosen uniformly without replacement.

    At level 100 detachable diacritics are dropped and ASCII digits are
    rewritten as Persian or Arabic-Indic digits. With ``trace=True`` the
    :class:`Corruption` record is returned alongside the sentence.
    """
    if s.noise_level != 0:
        raise ValueError("only clean sentences can be corrupted")
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    table = choose_table(s.lang, tables, spec, rng)
    result = corrupt_text(s.text, table, spec.level, rng)
    level = spec.level
    noisy = Sentence(result.text, s.lang, level, "synthetic" if level else "corpus")
    return (noisy, result) if trace else noisy


def sentence_rng(seed: int, level: int, index: int) -> np.random.Generator:
    """Independent stream per (root seed, level, sentence index)."""
    return np.random.default_rng(np.random.SeedSequence([seed, level, index]))


def corrupt_corpus(clean: Dataset, tables, levels=NOISE_LEVELS, seed: int = 0,
                   dominant: str | None = None, allow_any_level: bool = False,
                   ) -> dict[int, Dataset]:
    for s in clean.sentences:
        if s.noise_level != 0:
            raise ValueError("input must contain clean sentences only")
        if s.lang in CONVENTIONAL_ONLY:
            raise ValueError(f"{s.lang} has no unconventional writing and cannot be corrupted")
    out = {}
    for level in levels:
        spec = NoiseSpec(level, seed, dominant, allow_any_level)
        noisy = [corrupt_sentence(s, tables, spec, sentence_rng(seed, level, i))
                 for i, s in enumerate(clean.sentences)]
        out[level] = Dataset(noisy, noisy_mode(level), clean.split)
    return out
