"""
Exact arithmetic over Q and finite fields
=========================================
"""

import numpy as np

from unitgen.exactmath import GF, Matrix, Q, Subspace, enumerate_subspaces, gaussian_binomial, perp

# F_9 = F_3[x]/(x^2 + 1); elements are integer codes 0..8
F9 = GF(3, 2)
print(F9, "modulus", F9.modulus)
x = F9.elements()
print("x^9 == x for every element:", np.all(F9.pow(x, 9) == x))

# matrices carry their field; rank, kernel and inverses are exact
F5 = GF(5)
m = Matrix(F5, [[1, 2, 3], [0, 1, 4], [2, 0, 1]])
print(m, "rank", m.rank(), "det", m.det())
print("m @ m^-1 == I:", m @ m.inv() == Matrix.identity(F5, 3))

# over Q the entries are Fractions
h = Matrix(Q, [[1, Q(1) / 2], [Q(1) / 2, Q(1) / 3]])
print("inverse of the 2x2 Hilbert matrix:", h.inv().tolist())

# subspaces are kept in reduced row echelon form, so equality is row equality
V = Subspace(F5, 3, [[1, 1, 0], [2, 2, 0], [0, 1, 1]])
print("V basis", V.tolist(), "perp", perp(V).tolist())

# over F_2 the line through (1, 1) is its own perp
W = Subspace(GF(2), 2, [[1, 1]])
print("self-perpendicular:", perp(W) == W)

# every d-dimensional subspace exactly once
for q in (2, 3, 5):
    count = sum(1 for _ in enumerate_subspaces(GF(q), 4, 2))
    print(f"2-planes in F_{q}^4: {count} (Gaussian binomial {gaussian_binomial(4, 2, q)})")
