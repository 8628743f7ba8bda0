"""
Unconventional writing, synthesized
===================================

Minority languages written in a Perso-Arabic script are often typed with the
conventions of a dominant language. Here a Central Kurdish sentence is
cleaned up and then pushed towards Persian and Arabic spelling at every
noise level.
"""

# %%
# Normalization: markup goes, digits become ASCII, Arabic yeh and kaf are
# unified to the Kurdish letters and the text is split into sentences.
from perso_lid import get_profile, normalize_pipeline

ckb = get_profile("ckb")
raw = "ئەمڕۆ ۲۰ خوێندكار هاتن بۆ قوتابخانەكەمان. https://example.org سڵاو لە هەمووان!"
clean = normalize_pipeline(raw, ckb)
for s in clean:
    print(s.noise_level, s.text)

# %%
# Which characters can be substituted, and with what?
from perso_lid import load_mappings
from perso_lid.scriptmap import substitutable_positions

tables = load_mappings()
table = tables[("ckb", "fas")]
for idx, rules in substitutable_positions(clean[0], table)[:6]:
    ch = clean[0].text[idx]
    print(idx, f"U+{ord(ch):04X}", ch, "->", [t or "(deleted)" for r in rules for t in r.targets])

# %%
# Corrupt the first sentence at each level. The dominant language is drawn
# per sentence; at 100% the diacritics go as well and digits are rewritten.
import numpy as np

from perso_lid import NOISE_LEVELS, NoiseSpec, corrupt_sentence

for level in NOISE_LEVELS:
    noisy, trace = corrupt_sentence(clean[0], list(tables.values()), NoiseSpec(level, seed=7),
                                    np.random.default_rng([7, level]), trace=True)
    print(f"{level:3d}% -> {trace.target_lang}  {len(trace.substituted)}/{trace.n_substitutable}  "
          f"{noisy.text}")
