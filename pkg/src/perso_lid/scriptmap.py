"""Grapheme substitution tables from a source script to a dominant script.

Mapping files are UTF-8 TSV with three columns: source codepoint, position
keyword (``any``, ``word_initial``, ``word_medial``, ``word_final``) and
``;``-separated target sequences. A target sequence is one or more
space-separated codepoints, or ``-`` for deletion. Lines starting with
``#`` are comments; ``# source: xxx``, ``# target: yyy`` and
``# numerals: yes|no`` header comments carry the table metadata, which
otherwise falls back to a ``<source>-<target>.tsv`` file name.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .normalize import ZWNJ
from .profiles import (LanguageProfile, builtin_profiles, data_dir, format_codepoint,
                       parse_codepoint)

POSITIONS = ("any", "word_initial", "word_medial", "word_final")
HARAKAT = frozenset(chr(c) for c in range(0x064B, 0x0653))
PERSIAN_DIGITS = "".join(chr(0x06F0 + i) for i in range(10))
ARABIC_DIGITS = "".join(chr(0x0660 + i) for i in range(10))

_META = re.compile(r"#\s*(source|target|numerals)\s*:\s*(\S+)")


class MappingError(ValueError):
    pass


@dataclass(frozen=True)
class MappingRule:
    source: str
    targets: tuple[str, ...]
    position: str = "any"

    def __post_init__(self):
        if len(self.source) != 1:
            raise MappingError(f"rule source must be one codepoint, got {self.source!r}")
        if not self.targets:
            raise MappingError(f"rule for {format_codepoint(self.source)} has no targets")
        if self.position not in POSITIONS:
            raise MappingError(f"unknown position {self.position!r}")

    @property
    def substitutions(self) -> tuple[str, ...]:
        """Targets that actually change the source (identity excluded)."""
        return tuple(t for t in self.targets if t != self.source)


@dataclass(frozen=True)
class MappingTable:
    source_lang: str
    target_lang: str
    rules: tuple[MappingRule, ...]
    numeral_randomization: bool = True
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, dict[str, MappingRule]] = {}
        for rule in self.rules:
            slot = index.setdefault(rule.source, {})
            if rule.position in slot:
                raise MappingError(
                    f"{self.source_lang}->{self.target_lang}: duplicate rule for "
                    f"{format_codepoint(rule.source)} at position {rule.position}")
            slot[rule.position] = rule
        object.__setattr__(self, "_index", index)

    def rules_for(self, ch: str) -> dict[str, MappingRule]:
        return self._index.get(ch, {})

    def applicable(self, ch: str, position: str) -> list[MappingRule]:
        """Rules for ``ch`` at a word position, identity-only rules excluded."""
        slot = self._index.get(ch)
        if not slot:
            return []
        out = []
        for pos in ("any", position) if position != "isolated" else (
                "any", "word_initial", "word_final"):
            rule = slot.get(pos)
            if rule is not None and rule.substitutions:
                out.append(rule)
        return out


def check_table(table: MappingTable, profiles: dict[str, LanguageProfile]) -> None:
    for lang in (table.source_lang, table.target_lang):
        if lang not in profiles:
            raise MappingError(f"unknown language {lang!r}")
    src = profiles[table.source_lang]
    if table.target_lang not in src.dominant_langs:
        raise MappingError(
            f"{table.target_lang} is not a dominant language of {table.source_lang} "
            f"(dominant: {', '.join(src.dominant_langs) or 'none'})")


def _parse_targets(field_: str, where: str) -> tuple[str, ...]:
    out = []
    for seq in field_.split(";"):
        seq = seq.strip()
        if seq == "-":
            out.append("")
        elif seq:
            out.append("".join(parse_codepoint(tok) for tok in seq.split()))
        else:
            raise MappingError(f"{where}: empty target sequence")
    return tuple(out)


def parse_mapping(text: str, source_lang=None, target_lang=None, where="<string>",
                  profiles=None) -> MappingTable:
    meta = {}
    rules = []
    seen: dict[tuple[str, str], int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _META.match(stripped)
            if m:
                meta[m.group(1)] = m.group(2)
            continue
        loc = f"{where}:{lineno}"
        cols = line.rstrip("\n").split("\t")
        if len(cols) != 3:
            raise MappingError(f"{loc}: expected 3 tab-separated columns, got {len(cols)}")
        try:
            source = parse_codepoint(cols[0])
        except ValueError as exc:
            raise MappingError(f"{loc}: {exc}") from None
        position = cols[1].strip()
        if position not in POSITIONS:
            raise MappingError(f"{loc}: unknown position {position!r}")
        key = (source, position)
        if key in seen:
            raise MappingError(
                f"{loc}: duplicate rule for {format_codepoint(source)} ({position}), "
                f"first defined on line {seen[key]}")
        seen[key] = lineno
        try:
            targets = _parse_targets(cols[2], loc)
        except ValueError as exc:
            raise MappingError(f"{loc}: {exc}") from None
        rules.append(MappingRule(source, targets, position))
    source_lang = meta.get("source", source_lang)
    target_lang = meta.get("target", target_lang)
    if not source_lang or not target_lang:
        raise MappingError(f"{where}: cannot determine source/target languages")
    numerals = meta.get("numerals", "yes").lower() in ("yes", "true", "1")
    table = MappingTable(source_lang, target_lang, tuple(rules), numerals)
    check_table(table, profiles if profiles is not None else builtin_profiles())
    return table


def load_mapping(path, profiles=None) -> MappingTable:
    path = Path(path)
    src = tgt = None
    if path.stem.count("-") == 1:
        src, tgt = path.stem.split("-")
    return parse_mapping(path.read_text(encoding="utf-8"), src, tgt, str(path), profiles)


def save_mapping(table: MappingTable, path) -> None:
    lines = [f"# source: {table.source_lang}", f"# target: {table.target_lang}",
             f"# numerals: {'yes' if table.numeral_randomization else 'no'}"]
    for rule in table.rules:
        targets = ";".join(format_codepoint(t) if t else "-" for t in rule.targets)
        lines.append(f"{format_codepoint(rule.source)}\t{rule.position}\t{targets}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_mappings(directory=None, profiles=None) -> dict[tuple[str, str], MappingTable]:
    directory = Path(directory) if directory is not None else data_dir() / "mappings"
    tables = {}
    for path in sorted(directory.glob("*.tsv")):
        table = load_mapping(path, profiles)
        tables[(table.source_lang, table.target_lang)] = table
    return tables


@dataclass
class ValidationReport:
    source_lang: str
    target_lang: str
    coverage_gaps: list[str]
    foreign_targets: list[tuple[str, str]]

    @property
    def complete(self) -> bool:
        return not self.coverage_gaps and not self.foreign_targets

    def __str__(self):
        if self.complete:
            return f"{self.source_lang}->{self.target_lang}: complete"
        parts = [f"{self.source_lang}->{self.target_lang}:"]
        if self.coverage_gaps:
            parts.append("unmapped " + ", ".join(format_codepoint(c)
                                                 for c in self.coverage_gaps))
        if self.foreign_targets:
            parts.append("targets outside inventory " + ", ".join(
                f"{format_codepoint(s)}->{format_codepoint(t)}"
                for s, t in self.foreign_targets))
        return " ".join(parts)


def validate_table(table: MappingTable, profiles: dict[str, LanguageProfile]) -> ValidationReport:
    """Check coverage and target soundness of a table.

    A source letter missing from the target inventory must have an
    ``any``-position rule; positional rules alone leave other positions
    unmapped and are reported as gaps.
    """
    src = profiles[table.source_lang]
    tgt = profiles[table.target_lang]
    gaps = []
    for ch in sorted(src.letters - tgt.inventory):
        rule = table.rules_for(ch).get("any")
        if rule is None or not rule.substitutions:
            gaps.append(ch)
    foreign = []
    for rule in table.rules:
        for target in rule.targets:
            for ch in target:
                if ch not in tgt.inventory:
                    foreign.append((rule.source, ch))
    return ValidationReport(table.source_lang, table.target_lang, gaps, foreign)


def _in_word(ch: str) -> bool:
    return ch == ZWNJ or unicodedata.category(ch)[0] in "LM"


def word_positions(text: str) -> list[str | None]:
    """Position keyword of each codepoint within its word (None outside words).

    Words are maximal runs of letters, marks and ZWNJ; one-letter words are
    ``isolated`` and match both initial and final rules.
    """
    out: list[str | None] = [None] * len(text)
    i = 0
    n = len(text)
    while i < n:
        if not _in_word(text[i]):
            i += 1
            continue
        j = i
        while j < n and _in_word(text[j]):
            j += 1
        letters = [k for k in range(i, j) if unicodedata.category(text[k])[0] == "L"]
        for k in range(i, j):
            out[k] = "word_medial"
        if len(letters) == 1:
            out[letters[0]] = "isolated"
        elif letters:
            out[letters[0]] = "word_initial"
            out[letters[-1]] = "word_final"
        i = j
    return out


def substitutable_positions(sentence, table: MappingTable) -> list[tuple[int, list[MappingRule]]]:
    text = getattr(sentence, "text", sentence)
    out = []
    positions = word_positions(text)
    for idx, ch in enumerate(text):
        pos = positions[idx] or "any"
        rules = table.applicable(ch, pos)
        if rules:
            out.append((idx, rules))
    return out


def map_numeral(ch: str, rng) -> str:
    """Replace an ASCII digit by its Persian or Arabic-Indic form, chosen
    uniformly at random."""
    if len(ch) != 1 or ch not in "0123456789":
        raise ValueError(f"not an ASCII digit: {ch!r}")
    block = PERSIAN_DIGITS if rng.random() < 0.5 else ARABIC_DIGITS
    return block[int(ch)]
