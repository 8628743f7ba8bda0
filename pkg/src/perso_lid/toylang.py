"""Artificial Perso-Arabic-script languages for end-to-end experiments.

Two language families each hold one dominant language and two minority
languages. Family members share most of a proto lexicon, and each minority
spells some proto letters with letters of its own. The mapping tables send
a minority's own letters back to the dominant's spelling, so heavily
corrupted minority text drifts towards its dominant and its sibling, which
is the confusion pattern the hierarchical model is meant to untangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .normalize import Sentence
from .dataset import write_corpus
from .profiles import LanguageProfile, save_profile
from .scriptmap import MappingRule, MappingTable, save_mapping

# shared letters: alef .. ghain and feh .. yeh from the Arabic block
BASE = [chr(c) for c in range(0x0627, 0x063B) if c != 0x0629] + \
       [chr(c) for c in range(0x0641, 0x064B) if c != 0x0649]

FAMILIES = {
    "xda": ("xma", "xmb"),
    "xdb": ("xmc", "xmd"),
}

# letters only a minority uses, and the proto letters it spells with them
OWN_LETTERS = {
    "xma": ("ٹ", "پ"),
    "xmb": ("چ", "ژ"),
    "xmc": ("ک", "گ"),
    "xmd": ("ں", "ھ"),
}

# a minority's second dominant, as some real languages have two
EXTRA_DOMINANT = {"xmb": "xdb"}


@dataclass
class ToyWorld:
    profiles: dict[str, LanguageProfile]
    tables: list[MappingTable]
    corpus: dict[str, list[Sentence]]

    @property
    def languages(self) -> list[str]:
        return sorted(self.profiles)

    @property
    def families(self) -> list[frozenset]:
        return [frozenset((d,) + m) for d, m in FAMILIES.items()]

    def write_config(self, directory) -> Path:
        """Lay out profiles/ and mappings/ as a config directory."""
        directory = Path(directory)
        (directory / "profiles").mkdir(parents=True, exist_ok=True)
        (directory / "mappings").mkdir(parents=True, exist_ok=True)
        for code, prof in self.profiles.items():
            save_profile(prof, directory / "profiles" / f"{code}.profile")
        for t in self.tables:
            save_mapping(t, directory / "mappings" / f"{t.source_lang}-{t.target_lang}.tsv")
        return directory

    def write_corpus(self, directory) -> Path:
        """One ``<code>.txt`` file per language, one sentence per line."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for code, sents in self.corpus.items():
            write_corpus(sents, directory / f"{code}.txt")
        return directory


def _word(rng, letters, weights, lo=2, hi=7) -> str:
    n = rng.integers(lo, hi + 1)
    return "".join(rng.choice(letters, size=n, p=weights))


def _lexicon(rng, proto: list[str], spelling: dict[str, str], letters, weights,
             shared: float, size: int) -> list[str]:
    """Keep a ``shared`` share of proto words (respelled), coin the rest."""
    keep = rng.random(len(proto)) < shared
    words = ["".join(spelling.get(ch, ch) for ch in w) for w, k in zip(proto, keep) if k]
    while len(words) < size:
        words.append(_word(rng, letters, weights))
    return list(dict.fromkeys(words))


def make_toy_world(seed: int = 0, n_sentences: int = 2000, lexicon_size: int = 400,
                   shared: float = 0.95, sentence_len=(2, 6)) -> ToyWorld:
    rng = np.random.default_rng(seed)
    profiles, tables, corpus = {}, [], {}
    for dom, minorities in FAMILIES.items():
        weights = rng.dirichlet(np.full(len(BASE), 2.0))
        proto = list(dict.fromkeys(_word(rng, BASE, weights) for _ in range(lexicon_size)))
        # letters the family members respell, most frequent first
        respelled = [BASE[i] for i in np.argsort(-weights)[:2]]
        lexica = {dom: _lexicon(rng, proto, {}, BASE, weights, shared, lexicon_size)}
        profiles[dom] = LanguageProfile(dom, "abjad", False, False, (),
                                        frozenset(BASE), (), name=f"toy dominant {dom}",
                                        custom=True)
        for m in minorities:
            own = OWN_LETTERS[m]
            spelling = dict(zip(respelled, own))
            letters = BASE + list(own)
            w = np.concatenate([weights, weights[[BASE.index(c) for c in respelled]]])
            for c in respelled:
                w[BASE.index(c)] = 0.0
            w = w / w.sum()
            lexica[m] = _lexicon(rng, proto, spelling, letters, w, shared, lexicon_size)
            doms = (dom,) + ((EXTRA_DOMINANT[m],) if m in EXTRA_DOMINANT else ())
            profiles[m] = LanguageProfile(m, "abjad", False, False, doms,
                                          frozenset(letters), (), name=f"toy minority {m}",
                                          custom=True)
            for target in doms:
                rules = [MappingRule(o, (b,), "any") for o, b in zip(own, respelled)]
                # word-final alef is written as heh by the dominant
                rules.append(MappingRule("ا", ("ه",), "word_final"))
                tables.append(MappingTable(m, target, tuple(rules)))
        for lang, lex in lexica.items():
            freq = 1.0 / np.arange(1, len(lex) + 1) ** 1.1
            freq = rng.permutation(freq)
            freq /= freq.sum()
            sents = []
            for _ in range(n_sentences):
                n = rng.integers(sentence_len[0], sentence_len[1] + 1)
                sents.append(Sentence(" ".join(rng.choice(lex, size=n, p=freq)), lang))
            corpus[lang] = sents
    return ToyWorld(profiles, tables, corpus)
