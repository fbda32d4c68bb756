"""
Why a tuple fails to generate
=============================

A non-generating tuple lies in some A_V (common invariant subspace V) or
some B_[p] (the pairs (a, p a p^-1) with p symmetric or alternating).
"""

import numpy as np

from unitgen.exactmath import GF
from unitgen.unitary import check_witness, classify, make_model, witness_classes

F = GF(2)
M = make_model(2, F)

# companion matrix of x^2 + x + 1: no eigenvector over F_2, one over F_4
a = M.matrix([[0, 1], [1, 1]])
T = [(a, a.T)]
for w in classify(M, T, all_witnesses=True):
    print(w.to_dict(), "verified:", check_witness(T, w))

# tally witness classes over random non-generating elements of A_3 over F_3
F3 = GF(3)
M3 = make_model(3, F3)
rng = np.random.default_rng(1)
tally = {}
found = 0
while found < 50:
    x = F3.random(rng, M3.dim)
    ws = classify(M3, [x], all_witnesses=True)
    if ws[0].to_dict()["type"] == "generates":
        continue
    found += 1
    for label in witness_classes(ws):
        tally[label] = tally.get(label, 0) + 1
print("classes among 50 non-generating elements of A_3(F_3):", dict(sorted(tally.items())))
