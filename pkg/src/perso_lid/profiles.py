"""Per-language script profiles.

Each supported language ships one UTF-8 ``<code>.profile`` file of
``key = value`` lines; codepoints are written in ``U+XXXX`` notation::

    code = ckb
    script_type = alphabet
    diacritics = no
    zwnj = no
    dominant = fas, arb
    inventory = U+0626 U+0627 ...
    unify = U+064A>U+06CC U+0643>U+06A9
"""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

LANGUAGES = (
    "azb", "glk", "mzn", "pus", "hac", "kmr", "ckb", "sdh", "bal", "brh",
    "kas", "snd", "skr", "trw", "pnb", "fas", "arb", "urd", "uig",
)
# Languages only written conventionally; they never receive synthetic noise.
CONVENTIONAL_ONLY = frozenset({"fas", "arb", "urd", "uig"})

CONFIG_ENV = "PERSO_LID_CONFIG"


class ProfileError(ValueError):
    pass


def parse_codepoint(token: str) -> str:
    token = token.strip()
    if token.upper().startswith("U+"):
        token = token[2:]
    try:
        return chr(int(token, 16))
    except ValueError:
        raise ProfileError(f"bad codepoint {token!r}") from None


def format_codepoint(ch: str) -> str:
    return " ".join(f"U+{ord(c):04X}" for c in ch)


@dataclass(frozen=True)
class LanguageProfile:
    code: str
    script_type: str
    uses_diacritics: bool
    uses_zwnj: bool
    dominant_langs: tuple[str, ...]
    inventory: frozenset[str]
    unification_rules: tuple[tuple[str, str], ...] = ()
    name: str = ""
    # Custom profiles (e.g. artificial test languages) skip the checks tied
    # to the fixed 19-language set.
    custom: bool = False
    _table: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.script_type not in ("abjad", "alphabet"):
            raise ProfileError(f"{self.code}: bad script_type {self.script_type!r}")
        if not self.custom:
            if self.code not in LANGUAGES:
                raise ProfileError(f"unknown language code {self.code!r}")
            if bool(self.dominant_langs) == (self.code in CONVENTIONAL_ONLY):
                raise ProfileError(
                    f"{self.code}: dominant languages must be empty exactly for "
                    f"{sorted(CONVENTIONAL_ONLY)}")
            for lang in self.dominant_langs:
                if lang not in LANGUAGES:
                    raise ProfileError(f"{self.code}: unknown dominant language {lang!r}")
        for variant, canonical in self.unification_rules:
            if canonical not in self.inventory:
                raise ProfileError(
                    f"{self.code}: canonical {format_codepoint(canonical)} "
                    "is not in the inventory")
        table = str.maketrans({v: c for v, c in self.unification_rules})
        object.__setattr__(self, "_table", table)

    @property
    def letters(self) -> frozenset[str]:
        """Inventory members that are letters (diacritic marks excluded)."""
        return frozenset(c for c in self.inventory
                         if unicodedata.category(c).startswith("L"))

    @property
    def variants(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.unification_rules)


_BOOL = {"yes": True, "true": True, "1": True, "no": False, "false": False, "0": False}


def parse_profile(text: str, source: str = "<string>") -> LanguageProfile:
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ProfileError(f"{source}:{lineno}: expected 'key = value'")
        fields[key.strip()] = value.strip()
    try:
        code = fields["code"]
        inventory = frozenset(parse_codepoint(t) for t in fields["inventory"].split())
        rules = []
        for pair in fields.get("unify", "").split():
            variant, _, canonical = pair.partition(">")
            rules.append((parse_codepoint(variant), parse_codepoint(canonical)))
        dominant = tuple(d.strip() for d in fields.get("dominant", "").split(",")
                         if d.strip())
        return LanguageProfile(
            code=code,
            name=fields.get("name", code),
            script_type=fields["script_type"],
            uses_diacritics=_BOOL[fields["diacritics"].lower()],
            uses_zwnj=_BOOL[fields["zwnj"].lower()],
            dominant_langs=dominant,
            inventory=inventory,
            unification_rules=tuple(rules),
            custom=_BOOL[fields.get("custom", "no").lower()],
        )
    except KeyError as exc:
        raise ProfileError(f"{source}: missing or invalid field {exc}") from None


def load_profile(path) -> LanguageProfile:
    path = Path(path)
    return parse_profile(path.read_text(encoding="utf-8"), str(path))


def save_profile(profile: LanguageProfile, path) -> None:
    lines = [
        f"code = {profile.code}",
        f"name = {profile.name}",
        f"script_type = {profile.script_type}",
        f"diacritics = {'yes' if profile.uses_diacritics else 'no'}",
        f"zwnj = {'yes' if profile.uses_zwnj else 'no'}",
        f"dominant = {', '.join(profile.dominant_langs)}",
        "inventory = " + " ".join(format_codepoint(c) for c in sorted(profile.inventory)),
        "unify = " + " ".join(f"{format_codepoint(v)}>{format_codepoint(c)}"
                              for v, c in profile.unification_rules),
    ]
    if profile.custom:
        lines.append("custom = yes")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def data_dir() -> Path:
    """Directory holding ``profiles/``, ``mappings/`` and ``clusters/``.

    ``$PERSO_LID_CONFIG`` overrides the copy bundled with the package.
    """
    env = os.environ.get(CONFIG_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("perso_lid") / "data"))


def load_profiles(directory=None) -> dict[str, LanguageProfile]:
    directory = Path(directory) if directory is not None else data_dir() / "profiles"
    profiles = {}
    for path in sorted(directory.glob("*.profile")):
        prof = load_profile(path)
        profiles[prof.code] = prof
    return profiles


@lru_cache(maxsize=None)
def _cached_profiles(directory: str) -> dict[str, LanguageProfile]:
    return load_profiles(directory)


def builtin_profiles() -> dict[str, LanguageProfile]:
    """Profiles from the active config directory, loaded once per directory."""
    return _cached_profiles(str(data_dir() / "profiles"))


def get_profile(code: str) -> LanguageProfile:
    try:
        return builtin_profiles()[code]
    except KeyError:
        raise ProfileError(f"no profile for language {code!r}") from None
