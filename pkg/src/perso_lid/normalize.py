"""Text preprocessing: markup stripping, numeral and codepoint unification,
ZWNJ handling, sentence splitting and script-coverage filtering.

Every function here is pure and idempotent.
"""

from __future__ import annotations

import html
import re
import unicodedata
from dataclasses import dataclass

from .profiles import LanguageProfile

ZWNJ = "\u200c"

_DIGITS = {}
for _base in (0x0660, 0x06F0):
    for _i in range(10):
        _DIGITS[_base + _i] = str(_i)
DIGIT_TABLE = str.maketrans(_DIGITS)

SENTENCE_END = ".!?\u061f\u06d4\u2026"

_URL = re.compile(r"(?:(?:https?|ftp)://|www\.)\S+", re.IGNORECASE)
_EMAIL = re.compile(r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+")
_PHONE = re.compile(r"(?<![\w+])\+?\(?\d[\d\s().\-]{5,}\d(?![\w])")
_TAG = re.compile(r"<[^<>\n]{1,200}>")
_WIKI = re.compile(r"\[\[|\]\]|\{\{|\}\}|'{2,}")
_SPACE = re.compile(r"\s+")
_SPLIT = re.compile(r"(?<=[" + re.escape(SENTENCE_END) + r"])\s+|\n+")
_PRESENTATION = re.compile("[\ufb50-\ufdff\ufe70-\ufefe]+")


@dataclass(frozen=True)
class Sentence:
    text: str
    lang: str
    noise_level: int = 0
    origin: str = "corpus"

    def __post_init__(self):
        if not 0 <= self.noise_level <= 100:
            raise ValueError(f"bad noise level {self.noise_level}")
        if (self.noise_level == 0) != (self.origin == "corpus"):
            raise ValueError("noise_level is 0 exactly for corpus sentences")


def _phone(match: re.Match) -> str:
    digits = sum(ch.isdigit() for ch in match.group())
    return " " if 7 <= digits <= 15 else match.group()


def _is_format_char(ch: str) -> bool:
    if ch == ZWNJ:
        return False
    cat = unicodedata.category(ch)
    return cat == "Cf" or (cat == "Cc" and not ch.isspace())


def strip_markup(raw: str) -> str:
    """Remove URLs, e-mail addresses, phone numbers, tags and formatting
    control characters (ZWNJ is kept), collapsing whitespace."""
    text = html.unescape(raw)
    text = _TAG.sub(" ", text)
    text = _URL.sub(" ", text)
    text = _EMAIL.sub(" ", text)
    text = _PHONE.sub(_phone, text)
    text = _WIKI.sub(" ", text)
    text = "".join(" " if _is_format_char(ch) else ch for ch in text)
    return _SPACE.sub(" ", text).strip()


def unify_numerals(text: str) -> str:
    return text.translate(DIGIT_TABLE)


def _canonical_form(text: str) -> str:
    text = _PRESENTATION.sub(lambda m: unicodedata.normalize("NFKC", m.group()), text)
    return unicodedata.normalize("NFC", text)


def unify_codepoints(text: str, profile: LanguageProfile) -> str:
    """Map keyboard-dependent variant codepoints to the profile's canonical ones.

    Arabic presentation forms are folded and the text is put in NFC first.
    """
    while True:
        out = _canonical_form(text).translate(profile._table)
        if out == text:
            return out
        text = out


def apply_zwnj_policy(text: str, profile: LanguageProfile) -> str:
    if profile.uses_zwnj:
        return text
    return text.replace(ZWNJ, "")


def sentence_split(text: str, min_chars: int = 3) -> list[str]:
    out = []
    for piece in _SPLIT.split(text):
        piece = piece.strip()
        if piece and sum(not ch.isspace() for ch in piece) >= min_chars:
            out.append(piece)
    return out


def script_coverage(text: str, profile: LanguageProfile) -> float:
    """Fraction of letters in ``text`` that belong to the profile inventory."""
    letters = [ch for ch in text if unicodedata.category(ch).startswith("L")]
    if not letters:
        return 0.0
    return sum(ch in profile.inventory for ch in letters) / len(letters)


def normalize_text(raw: str, profile: LanguageProfile) -> str:
    text = strip_markup(raw)
    text = unify_numerals(text)
    text = unify_codepoints(text, profile)
    return apply_zwnj_policy(text, profile)


def normalize_pipeline(raw: str, profile: LanguageProfile, min_chars: int = 3,
                       min_coverage: float | None = 0.9) -> list[Sentence]:
    """Full preprocessing of a raw paragraph into corpus sentences.

    Sentences whose letters are less than ``min_coverage`` inside the
    profile inventory are dropped as other-script or code-switched text;
    pass ``min_coverage=None`` to keep everything.
    """
    out = []
    for piece in sentence_split(normalize_text(raw, profile), min_chars):
        if min_coverage is not None and script_coverage(piece, profile) < min_coverage:
            continue
        out.append(Sentence(piece, profile.code))
    return out
