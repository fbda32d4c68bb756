"""
Subalgebras generated by a tuple
================================

A_n = M_n x M_n with (a, b)* = (b^t, a^t).  The generated subalgebra must
contain the unit and be stable under the involution.
"""

import numpy as np

from unitgen.exactmath import GF, Q
from unitgen.mualg import closure, derivation_algebra, generates
from unitgen.unitary import explicit_generators, make_model

M = make_model(3, GF(5))
A = M.algebra
print(M, "dimension", A.dim)

# (u, d_13) alone generates all of A_3
x = M.pair(M.u, M.d(1, 3))
print("closure of (u, d_13):", closure(A, [x]).dim)

# a pair (a, a) only reaches the graph of conjugation by the identity
a = M.u + M.d(1, 2)
print("closure of (a, a):", closure(A, [M.pair(a, a)]).dim)

# random single elements usually generate
rng = np.random.default_rng(0)
hits = sum(generates(A, [GF(5).random(rng, A.dim)]) for _ in range(200))
print(f"{hits}/200 random elements generate")

# explicit generators for the maximal subalgebra A_V(1) of A_4, checked by closure
gs = explicit_generators("AV", 4, GF(7), k=1, alpha=2)
print("A_V(1) generator: closure", gs.closure_dim, "target", gs.target_dim, "ok", gs.ok)

# over F_2 no alpha outside {0, 1, -1} exists, so the field is enlarged
gs = explicit_generators("AV", 3, GF(2), k=1)
print("escalated to", gs.field, "ok", gs.ok)

# derivations of (A_n, *) over Q have dimension n^2 - 1
for n in (2, 3):
    print(f"dim Der(A_{n}) =", derivation_algebra(make_model(n, Q).algebra).dim)
