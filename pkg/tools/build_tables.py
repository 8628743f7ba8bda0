"""Regenerate the shipped language profiles and script-mapping tables.

The files under ``src/perso_lid/data`` are the source of truth once written;
edit them by hand for fine corrections and use this script only to rebuild
the baseline from the letter inventories and similarity lists below.

    python tools/build_tables.py
"""

from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "perso_lid" / "data"

HARAKAT = list(range(0x064B, 0x0653))

ARABIC = [
    0x0621, 0x0622, 0x0623, 0x0624, 0x0625, 0x0626, 0x0627, 0x0628, 0x0629,
    0x062A, 0x062B, 0x062C, 0x062D, 0x062E, 0x062F, 0x0630, 0x0631, 0x0632,
    0x0633, 0x0634, 0x0635, 0x0636, 0x0637, 0x0638, 0x0639, 0x063A, 0x0641,
    0x0642, 0x0643, 0x0644, 0x0645, 0x0646, 0x0647, 0x0648, 0x0649, 0x064A,
]
PERSIAN = [
    0x0621, 0x0622, 0x0623, 0x0624, 0x0626, 0x0627, 0x0628, 0x067E, 0x062A,
    0x062B, 0x062C, 0x0686, 0x062D, 0x062E, 0x062F, 0x0630, 0x0631, 0x0632,
    0x0698, 0x0633, 0x0634, 0x0635, 0x0636, 0x0637, 0x0638, 0x0639, 0x063A,
    0x0641, 0x0642, 0x06A9, 0x06AF, 0x0644, 0x0645, 0x0646, 0x0648, 0x0647,
    0x06CC, 0x06C0,
]
URDU = [
    0x0621, 0x0622, 0x0623, 0x0624, 0x0626, 0x0627, 0x0628, 0x067E, 0x062A,
    0x0679, 0x062B, 0x062C, 0x0686, 0x062D, 0x062E, 0x062F, 0x0688, 0x0630,
    0x0631, 0x0691, 0x0632, 0x0698, 0x0633, 0x0634, 0x0635, 0x0636, 0x0637,
    0x0638, 0x0639, 0x063A, 0x0641, 0x0642, 0x06A9, 0x06AF, 0x0644, 0x0645,
    0x0646, 0x06BA, 0x0648, 0x06C1, 0x06BE, 0x06CC, 0x06D2, 0x06C2, 0x06D3,
    0x06C3,
]
KURDISH = [
    0x0626, 0x0627, 0x0628, 0x067E, 0x062A, 0x062C, 0x0686, 0x062D, 0x062E,
    0x062F, 0x0631, 0x0695, 0x0632, 0x0698, 0x0633, 0x0634, 0x0639, 0x063A,
    0x0641, 0x06A4, 0x0642, 0x06A9, 0x06AF, 0x0644, 0x06B5, 0x0645, 0x0646,
    0x0647, 0x06D5, 0x0648, 0x06C6, 0x06CC, 0x06CE, 0x06BE,
]
PASHTO = [
    0x0621, 0x0626, 0x0627, 0x0622, 0x0628, 0x067E, 0x062A, 0x067C, 0x062B,
    0x062C, 0x0686, 0x062D, 0x062E, 0x0685, 0x0681, 0x062F, 0x0689, 0x0630,
    0x0631, 0x0693, 0x0632, 0x0698, 0x0696, 0x0633, 0x0634, 0x069A, 0x0635,
    0x0636, 0x0637, 0x0638, 0x0639, 0x063A, 0x0641, 0x0642, 0x06A9, 0x06AB,
    0x0644, 0x0645, 0x0646, 0x06BC, 0x0648, 0x0647, 0x06CC, 0x06D0, 0x06CD,
    0x064A,
]
SINDHI = [
    0x0621, 0x0626, 0x0627, 0x0622, 0x0628, 0x067B, 0x0680, 0x062A, 0x067D,
    0x062B, 0x067A, 0x067F, 0x062C, 0x0684, 0x0683, 0x0686, 0x0687, 0x062D,
    0x062E, 0x062F, 0x068C, 0x068A, 0x068F, 0x068D, 0x068E, 0x0630, 0x0631,
    0x0699, 0x0632, 0x0633, 0x0634, 0x0635, 0x0636, 0x0637, 0x0638, 0x0639,
    0x063A, 0x0641, 0x06A6, 0x0642, 0x06AA, 0x06A9, 0x06AF, 0x06B3, 0x06B1,
    0x0644, 0x0645, 0x0646, 0x06BB, 0x0648, 0x0647, 0x06BE, 0x06CC,
]
UYGHUR = [
    0x0626, 0x0627, 0x06D5, 0x0628, 0x067E, 0x062A, 0x062C, 0x0686, 0x062E,
    0x062F, 0x0631, 0x0632, 0x0698, 0x0633, 0x0634, 0x063A, 0x0641, 0x0642,
    0x0643, 0x06AF, 0x06AD, 0x0644, 0x0645, 0x0646, 0x06BE, 0x0648, 0x06C7,
    0x06C6, 0x06C8, 0x06CB, 0x06D0, 0x0649, 0x064A,
]

PERSIAN_UNIFY = [(0x064A, 0x06CC), (0x0649, 0x06CC), (0x0643, 0x06A9)]
KURDISH_UNIFY = PERSIAN_UNIFY + [(0x06D2, 0x06CC), (0x0629, 0x06D5)]
URDU_UNIFY = PERSIAN_UNIFY + [(0x0647, 0x06C1)]

# code, name, script type, diacritics, zwnj, dominant, inventory, unification
LANGUAGES = [
    ("azb", "Azeri Turkish", "abjad", True, True, ["fas"],
     PERSIAN + [0x06C6, 0x06C7, 0x063D, 0x06C8], PERSIAN_UNIFY),
    ("glk", "Gilaki", "abjad", True, True, ["fas"],
     PERSIAN + [0x06CB, 0x06CA], PERSIAN_UNIFY),
    ("mzn", "Mazanderani", "abjad", True, True, ["fas"],
     PERSIAN + [0x06CA], PERSIAN_UNIFY),
    ("pus", "Pashto", "abjad", True, False, ["fas"],
     PASHTO, [(0x0643, 0x06A9)]),
    ("hac", "Gorani", "alphabet", False, False, ["fas", "arb", "ckb"],
     KURDISH + [0x068E, 0x06CA, 0x06C9], KURDISH_UNIFY),
    ("kmr", "Northern Kurdish", "alphabet", False, False, ["fas", "arb"],
     KURDISH, KURDISH_UNIFY),
    ("ckb", "Central Kurdish", "alphabet", False, False, ["fas", "arb"],
     KURDISH, KURDISH_UNIFY),
    ("sdh", "Southern Kurdish", "alphabet", False, False, ["fas", "arb"],
     KURDISH + [0x06CA], KURDISH_UNIFY),
    ("bal", "Balochi", "abjad", True, False, ["fas", "urd"],
     URDU + [0x06CE, 0x06CF, 0x06C6], URDU_UNIFY),
    ("brh", "Brahui", "abjad", True, False, ["urd"],
     URDU + [0x06B7], URDU_UNIFY),
    ("kas", "Kashmiri", "alphabet", True, False, ["urd"],
     URDU + [0x0672, 0x0673, 0x06C4, 0x0620, 0x06CE, 0x06C6], URDU_UNIFY),
    ("snd", "Sindhi", "abjad", True, False, ["urd"],
     SINDHI, [(0x064A, 0x06CC), (0x0649, 0x06CC), (0x0643, 0x06AA)]),
    ("skr", "Saraiki", "abjad", True, False, ["urd"],
     URDU + [0x067B, 0x0684, 0x0759, 0x06B3, 0x0768], URDU_UNIFY),
    ("trw", "Torwali", "abjad", True, False, ["urd"],
     URDU + [0x075C, 0x0699, 0x076A, 0x0687, 0x0685, 0x0681, 0x0696, 0x06CD],
     URDU_UNIFY),
    ("pnb", "Punjabi", "abjad", True, False, ["urd"],
     URDU + [0x0768, 0x076A, 0x06C4], URDU_UNIFY),
    ("fas", "Persian", "abjad", True, True, [], PERSIAN, PERSIAN_UNIFY),
    ("arb", "Arabic", "abjad", True, False, [], ARABIC,
     [(0x06CC, 0x064A), (0x06A9, 0x0643)]),
    ("urd", "Urdu", "abjad", True, True, [], URDU, URDU_UNIFY),
    ("uig", "Uyghur", "alphabet", False, False, [], UYGHUR,
     [(0x06CC, 0x064A), (0x06A9, 0x0643)]),
]

# Visually closest replacements, most similar first. "" means deletion;
# a space-separated value is a multi-codepoint target.
SIMILAR = {
    0x06CC: ["06CC", "064A", "0649"], 0x064A: ["064A", "06CC"],
    0x0649: ["0649", "06CC", "064A"], 0x06A9: ["06A9", "0643"],
    0x0643: ["0643", "06A9"], 0x067E: ["067E", "0628"],
    0x0686: ["0686", "062C"], 0x0698: ["0698", "0632"],
    0x06AF: ["06AF", "0643", "06A9"], 0x06AB: ["06AF", "0643", "06A9"],
    0x06D5: ["0647", "06C1", "0629"], 0x0647: ["0647", "06C1"],
    0x06C1: ["06C1", "0647"], 0x06BE: ["06BE", "0647"],
    0x06C6: ["0648"], 0x06C7: ["0648"], 0x06C8: ["0648"], 0x06CB: ["0648"],
    0x06CA: ["0648", "0648 0648"], 0x06C9: ["0648"], 0x06CF: ["0648"],
    0x06C4: ["0648"], 0x06CE: ["06CC", "064A"], 0x06D0: ["06CC", "064A"],
    0x06CD: ["06CC", "06D2", "064A"], 0x063D: ["06CC", "064A"],
    0x0620: ["06CC", "064A"], 0x0695: ["0631"], 0x0693: ["0691", "0631"],
    0x0699: ["0691", "0631"], 0x0696: ["0698", "0632"], 0x06B5: ["0644"],
    0x06B7: ["0644"], 0x076A: ["0644"], 0x06A4: ["0641"],
    0x068E: ["0630", "062F"], 0x067C: ["0679", "062A"],
    0x0689: ["0688", "062F"], 0x0685: ["0686", "062C"],
    0x0681: ["062D", "062C"], 0x069A: ["0634", "0633"], 0x06BC: ["0646"],
    0x0679: ["0679", "062A"], 0x0688: ["0688", "062F"],
    0x0691: ["0691", "0631"], 0x06BA: ["06BA", "0646"],
    0x06D2: ["06D2", "06CC", "064A"], 0x06D3: ["06D3", "06D2", "06CC"],
    0x06C2: ["06C2", "06C0", "0647"], 0x06C3: ["06C3", "0629", "0647"],
    0x06C0: ["06C0", "06C2", "0647"], 0x0629: ["0629", "06C3", "0647"],
    0x0672: ["0627"], 0x0673: ["0627", "0625"], 0x067B: ["0628"],
    0x0680: ["0628", "067E"], 0x067D: ["0679", "062A"], 0x067A: ["062A"],
    0x067F: ["062A", "062B"], 0x0684: ["062C"], 0x0683: ["062C", "0686"],
    0x0687: ["0686", "062C"], 0x068C: ["062F"], 0x068A: ["0688", "062F"],
    0x068F: ["062F", "0688"], 0x068D: ["0688", "062F"], 0x06A6: ["0641"],
    0x06AA: ["06A9", "0643"], 0x06B3: ["06AF", "0643"],
    0x06B1: ["06AF", "0643"], 0x06BB: ["06BA", "0646"],
    0x0759: ["0688", "062F"], 0x0768: ["06BA", "0646"],
    0x075C: ["0634", "0633"], 0x06AD: ["06AF", "0643"],
    0x0623: ["0623", "0627"], 0x0625: ["0625", "0627"],
    0x0622: ["0622", "0627"], 0x0624: ["0624", "0648"],
    0x0626: ["0626", "06CC", "064A"], 0x0621: ["0621", ""],
}

# Kurdish-family vowels carry an initial hamza seat that dominant scripts drop.
INITIAL_HAMZA = {"fas": ["0627", ""], "arb": ["0623", "0627"]}
KURDISH_FAMILY = {"ckb", "kmr", "sdh", "hac"}


def fmt(cp):
    return f"U+{cp:04X}"


def write_profiles():
    for code, name, stype, diac, zwnj, dom, inv, unify in LANGUAGES:
        inv = list(dict.fromkeys(inv))
        if diac:
            inv = inv + HARAKAT
        for _, canon in unify:
            assert canon in inv, (code, hex(canon))
        lines = [
            f"# {name}",
            f"code = {code}",
            f"name = {name}",
            f"script_type = {stype}",
            f"diacritics = {'yes' if diac else 'no'}",
            f"zwnj = {'yes' if zwnj else 'no'}",
            f"dominant = {', '.join(dom)}",
            f"inventory = {' '.join(fmt(c) for c in inv)}",
            f"unify = {' '.join(f'{fmt(a)}>{fmt(b)}' for a, b in unify)}",
        ]
        (DATA / "profiles" / f"{code}.profile").write_text(
            "\n".join(lines) + "\n", encoding="utf-8")


def target_field(cands):
    out = []
    for c in cands:
        out.append("-" if c == "" else " ".join(f"U+{p}" for p in c.split()))
    return ";".join(out)


def write_mappings():
    langs = {row[0]: row for row in LANGUAGES}
    for code, name, _, _, _, dom, inv, _ in LANGUAGES:
        src_letters = [c for c in dict.fromkeys(inv)]
        for tgt in dom:
            tgt_inv = set(langs[tgt][6])
            lines = [
                f"# {name} -> {langs[tgt][1]}",
                f"# source: {code}",
                f"# target: {tgt}",
                "# numerals: yes",
                "# source\tposition\ttargets",
            ]
            if code in KURDISH_FAMILY and tgt in INITIAL_HAMZA:
                lines.append(f"U+0626\tword_initial\t"
                             f"{target_field(INITIAL_HAMZA[tgt])}")
            for cp in src_letters:
                if cp in tgt_inv:
                    continue
                cands = [c for c in SIMILAR.get(cp, [])
                         if c == "" or all(int(p, 16) in tgt_inv
                                           for p in c.split())]
                assert cands, (code, tgt, hex(cp))
                lines.append(f"{fmt(cp)}\tany\t{target_field(cands[:2])}")
            (DATA / "mappings" / f"{code}-{tgt}.tsv").write_text(
                "\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_profiles()
    write_mappings()
