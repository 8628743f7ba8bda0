"""Train/test splitting, low-resource upsampling and assembly of the
CLEAN / NOISY-<level> / ALL / MERGED dataset configurations."""

from __future__ import annotations

import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .normalize import Sentence
from .profiles import CONVENTIONAL_ONLY

log = logging.getLogger(__name__)

MODES = ("CLEAN", "NOISY", "ALL", "MERGED")


def noisy_mode(level: int) -> str:
    return f"NOISY-{level}"


def mode_level(mode: str) -> int | None:
    """Noise level encoded in a mode name (0 for CLEAN, None for mixtures)."""
    if mode == "CLEAN":
        return 0
    if mode.startswith("NOISY-"):
        return int(mode[6:])
    return None


@dataclass
class Dataset:
    sentences: list[Sentence]
    mode: str = "CLEAN"
    split: str = "unsplit"

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @property
    def texts(self) -> list[str]:
        return [s.text for s in self.sentences]

    @property
    def labels(self) -> list[str]:
        return [s.lang for s in self.sentences]

    @property
    def languages(self) -> list[str]:
        return sorted(set(self.labels))

    def by_language(self) -> dict[str, list[Sentence]]:
        out: dict[str, list[Sentence]] = {}
        for s in self.sentences:
            out.setdefault(s.lang, []).append(s)
        return out

    def counts(self) -> Counter:
        return Counter((s.lang, s.noise_level) for s in self.sentences)

    def subset(self, labels) -> "Dataset":
        keep = set(labels)
        return Dataset([s for s in self.sentences if s.lang in keep], self.mode, self.split)


# --------------------------------------------------------------------------
# splitting and upsampling

LOW_RESOURCE_LIMIT = 2000
MID_RESOURCE_LIMIT = 10000


def n_test(n_available: int, low_resource_rules: bool = True) -> int:
    """Number of sentences a language reserves for testing.

    Below 2000 sentences, 500 are reserved; below 10000, 2000; otherwise
    20% (rounded down).
    """
    if low_resource_rules:
        if n_available < LOW_RESOURCE_LIMIT:
            return 500
        if n_available < MID_RESOURCE_LIMIT:
            return 2000
    return n_available // 5


def split_train_test(corpus: dict[str, list], seed: int = 0, low_resource_rules: bool = True,
                     test_sizes: dict[str, int] | None = None):
    """Split per-language sentence lists into (train, test) dicts.

    Sentences are assigned uniformly at random per language; ``test_sizes``
    pins explicit counts for individual languages.
    """
    train, test = {}, {}
    for i, lang in enumerate(sorted(corpus)):
        items = list(corpus[lang])
        n = len(items)
        if n == 0:
            raise ValueError(f"{lang}: no sentences")
        if test_sizes and lang in test_sizes:
            k = test_sizes[lang]
        else:
            k = n_test(n, low_resource_rules)
        if k >= n:
            raise ValueError(
                f"{lang}: {n} sentences cannot reserve {k} for testing; "
                "pass an explicit test size")
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        order = rng.permutation(n)
        test_idx = np.sort(order[:k])
        train_idx = np.sort(order[k:])
        test[lang] = [items[j] for j in test_idx]
        train[lang] = [items[j] for j in train_idx]
    return train, test


def upsample(pool: list, coefficient: int | None = None, target: int | None = None,
             rng=None) -> list:
    """Enlarge a train pool.

    ``coefficient=c`` repeats every sentence exactly c times. ``target=n``
    repeats the pool whole as often as fits and tops it up with a uniform
    sample without replacement so exactly n sentences result.
    """
    if not pool:
        raise ValueError("cannot upsample an empty pool")
    if (coefficient is None) == (target is None):
        raise ValueError("give exactly one of coefficient or target")
    if coefficient is not None:
        if coefficient < 1:
            raise ValueError("coefficient must be >= 1")
        return list(pool) * coefficient
    if target < len(pool):
        raise ValueError(f"target {target} is smaller than the pool ({len(pool)})")
    whole, rest = divmod(target, len(pool))
    rng = rng if rng is not None else np.random.default_rng(0)
    extra = np.sort(rng.choice(len(pool), size=rest, replace=False))
    return list(pool) * whole + [pool[i] for i in extra]


def paper_upsampling(pool: list, n_available: int, coefficient: int = 4,
                     target: int = 8000, rng=None) -> list:
    """Upsampling policy for low-resource languages; others pass through."""
    if n_available < LOW_RESOURCE_LIMIT:
        return upsample(pool, coefficient=coefficient)
    if n_available < MID_RESOURCE_LIMIT:
        return upsample(pool, target=target, rng=rng)
    return list(pool)


# --------------------------------------------------------------------------
# assembly


def assemble(clean: Dataset, noisy: dict[int, Dataset], mode: str,
             levels=None, all_strategy: str = "balanced", extra_clean=None,
             allow_reuse: bool = False, strict: bool = True, seed: int = 0) -> Dataset:
    """Build one dataset configuration.

    ``mode`` is ``CLEAN``, ``NOISY-<level>``, ``ALL`` or ``MERGED``.

    ALL combines the noisy levels. With ``all_strategy="balanced"`` every
    clean sentence contributes one noisy version, its level drawn uniformly,
    so ALL has as many sentences per language as CLEAN; ``"union"`` keeps
    every version of every level.

    MERGED is CLEAN plus ALL, plus an extra tranche of clean sentences for
    each language without noisy data, sized like the ALL share of the noisy
    languages. ``extra_clean`` maps language -> spare clean sentences
    (disjoint from CLEAN); if it runs short and ``allow_reuse`` is set the
    tranche is completed with copies of CLEAN sentences (never for test
    splits); otherwise a short tranche raises unless ``strict=False``.
    """
    levels = sorted(noisy) if levels is None else list(levels)
    if mode == "CLEAN":
        return Dataset(list(clean.sentences), "CLEAN", clean.split)
    if mode.startswith("NOISY-"):
        level = mode_level(mode)
        if level not in noisy:
            raise ValueError(f"no noisy data for level {level}")
        return Dataset(list(noisy[level].sentences), mode, clean.split)
    if mode not in ("ALL", "MERGED"):
        raise ValueError(f"unknown mode {mode!r}")
    missing = [lv for lv in levels if lv not in noisy]
    if missing or not levels:
        raise ValueError(f"ALL needs every noise level; missing {missing or 'all'}")
    sizes = {len(noisy[lv]) for lv in levels}
    if all_strategy == "union":
        all_sentences = [s for lv in levels for s in noisy[lv].sentences]
    elif all_strategy == "balanced":
        if len(sizes) != 1:
            raise ValueError("balanced ALL needs equally sized noisy datasets")
        rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
        pick = rng.integers(len(levels), size=sizes.pop())
        all_sentences = [noisy[levels[p]].sentences[i] for i, p in enumerate(pick)]
    else:
        raise ValueError(f"unknown ALL strategy {all_strategy!r}")
    if mode == "ALL":
        return Dataset(all_sentences, "ALL", clean.split)

    noisy_counts = Counter(s.lang for s in all_sentences)
    per_lang = max(noisy_counts.values()) if noisy_counts else 0
    clean_by_lang = clean.by_language()
    extra = []
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
    for lang in sorted(clean_by_lang):
        if lang in noisy_counts:
            continue
        spare = list((extra_clean or {}).get(lang, []))
        if len(spare) > per_lang:
            spare = [spare[i] for i in np.sort(rng.choice(len(spare), per_lang, replace=False))]
        extra.extend(spare)
        short = per_lang - len(spare)
        if short <= 0:
            continue
        if allow_reuse and clean.split != "test":
            pool = clean_by_lang[lang]
            rounds = -(-short // len(pool))
            order = np.concatenate([rng.permutation(len(pool)) for _ in range(rounds)])
            extra.extend(pool[i] for i in order[:short])
        elif strict:
            raise ValueError(
                f"{lang}: MERGED needs {per_lang} extra clean sentences, "
                f"only {len(spare)} available")
        else:
            log.warning("%s: MERGED tranche short by %d sentences", lang, short)
    return Dataset(list(clean.sentences) + all_sentences + extra, "MERGED", clean.split)


# --------------------------------------------------------------------------
# file formats


def write_dataset(ds: Dataset, path) -> None:
    """UTF-8 TSV: label, noise level, text."""
    with open(path, "w", encoding="utf-8") as fh:
        for s in ds.sentences:
            fh.write(f"{s.lang}\t{s.noise_level}\t{s.text}\n")


def read_dataset(path, mode: str = "CLEAN", split: str = "unsplit") -> Dataset:
    sentences = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t", 2)
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected label<TAB>level<TAB>text")
            lang, level, text = parts
            level = int(level)
            sentences.append(Sentence(text, lang, level, "synthetic" if level else "corpus"))
    return Dataset(sentences, mode, split)


def read_corpus(path, lang: str) -> list[Sentence]:
    """One sentence per line."""
    with open(path, encoding="utf-8") as fh:
        return [Sentence(line.strip(), lang) for line in fh if line.strip()]


def write_corpus(sentences, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in sentences:
            fh.write(getattr(s, "text", s) + "\n")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class DatasetManifest:
    counts: dict[tuple[str, str, int], int] = field(default_factory=dict)
    seed: int = 0
    digests: dict[str, str] = field(default_factory=dict)

    def add(self, ds: Dataset) -> None:
        for (lang, level), n in ds.counts().items():
            key = (lang, ds.split, level)
            self.counts[key] = self.counts.get(key, 0) + n

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# seed\t{self.seed}\n")
            for name, digest in sorted(self.digests.items()):
                fh.write(f"# sha256\t{name}\t{digest}\n")
            fh.write("language\tsplit\tlevel\tcount\n")
            for (lang, split, level), n in sorted(self.counts.items()):
                fh.write(f"{lang}\t{split}\t{level}\t{n}\n")

    @classmethod
    def read(cls, path) -> "DatasetManifest":
        man = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if parts[0] == "# seed":
                    man.seed = int(parts[1])
                elif parts[0] == "# sha256":
                    man.digests[parts[1]] = parts[2]
                elif parts[0] != "language" and len(parts) == 4:
                    man.counts[(parts[0], parts[1], int(parts[2]))] = int(parts[3])
        return man


# --------------------------------------------------------------------------
# end-to-end configuration builder


@dataclass
class Benchmark:
    """Train/test datasets for every configuration, keyed by mode name."""
    train: dict[str, Dataset]
    test: dict[str, Dataset]
    manifest: DatasetManifest


def build_benchmark(corpus: dict[str, list[Sentence]], tables, seed: int = 0,
                    levels=(20, 40, 60, 80, 100), low_resource_rules: bool = True,
                    cap: int | None = 10000, upsampling: bool = True,
                    all_strategy: str = "balanced", conventional_only=CONVENTIONAL_ONLY,
                    ) -> Benchmark:
    """Build every configuration from clean per-language corpora.

    The first ``cap`` sentences of each language form the CLEAN corpus and
    the remainder serves as spare text for the MERGED tranche. Languages
    without a mapping table (or listed in ``conventional_only``) get no
    noisy data. Test splits are corrupted with an independent seed.
    """
    from .synth import corrupt_corpus

    if isinstance(tables, dict):
        tables = list(tables.values())
    noisy_langs = {t.source_lang for t in tables} - set(conventional_only)
    main = {lang: list(sents[:cap] if cap else sents) for lang, sents in corpus.items()}
    spare = {lang: list(sents[cap:]) if cap else [] for lang, sents in corpus.items()}
    train_pool, test_pool = split_train_test(main, seed, low_resource_rules)
    # spare text is divided so the train and test tranches never overlap
    spare_split = {"train": {}, "test": {}}
    for lang, sents in spare.items():
        cut = len(sents) * 4 // 5
        spare_split["train"][lang] = sents[:cut]
        spare_split["test"][lang] = sents[cut:]
    rng = np.random.default_rng(np.random.SeedSequence([seed, 3]))
    train_sents, test_sents = [], []
    for lang in sorted(main):
        pool = train_pool[lang]
        if upsampling and low_resource_rules:
            pool = paper_upsampling(pool, len(main[lang]), rng=rng)
        train_sents.extend(pool)
        test_sents.extend(test_pool[lang])
    manifest = DatasetManifest(seed=seed)
    out = {}
    for split, sents, split_seed in (("train", train_sents, seed),
                                     ("test", test_sents, seed + 1_000_003)):
        clean = Dataset(sents, "CLEAN", split)
        noisy_src = Dataset([s for s in sents if s.lang in noisy_langs], "CLEAN", split)
        configs = {"CLEAN": clean}
        if levels:
            noisy = corrupt_corpus(noisy_src, tables, levels, split_seed)
            for lv in levels:
                configs[noisy_mode(lv)] = assemble(clean, noisy, noisy_mode(lv))
            configs["ALL"] = assemble(clean, noisy, "ALL", levels, all_strategy,
                                      seed=split_seed)
            configs["MERGED"] = assemble(clean, noisy, "MERGED", levels, all_strategy,
                                         extra_clean=spare_split[split],
                                         allow_reuse=True, strict=False, seed=split_seed)
        for ds in configs.values():
            manifest.add(ds)
        out[split] = configs
    return Benchmark(out["train"], out["test"], manifest)
