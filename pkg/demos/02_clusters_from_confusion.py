"""
Finding confusable language clusters
====================================

The shipped confusion matrix (predicted rows, true columns) covers all 19
languages. Mutual confusion rates decide which languages get an expert.
"""

# %%
from pathlib import Path

import numpy as np

import perso_lid
from perso_lid import ConfusionMatrix, detect_clusters
from perso_lid.hier import DEFAULT_TAU

cm = ConfusionMatrix.read_tsv(Path(perso_lid.__file__).parent / "data" / "fixtures"
                              / "figure2_confusion.tsv")
print(cm.labels)
print("samples:", cm.total)

# %%
# The pair rate is the smaller of the two directed rates, so a language that
# only attracts wrong predictions does not pull others into a cluster.
R = cm.rates()
S = np.minimum(R, R.T)
np.fill_diagonal(S, 0)
i, j = np.unravel_index(S.argmax(), S.shape)
print("most confused pair:", cm.labels[i], cm.labels[j], round(S[i, j], 4))

# %%
cs = detect_clusters(cm, DEFAULT_TAU)
for c in cs.clusters:
    print(sorted(c))
print("unclustered:", sorted(cs.unclustered))

# %%
# The threshold matters: sweep it and watch the clusters split.
for tau in (0.0005, 0.001, 0.0015, DEFAULT_TAU, 0.003, 0.01):
    found = detect_clusters(cm, tau)
    print(f"tau={tau:<7} sizes={sorted(len(c) for c in found.clusters)}")
