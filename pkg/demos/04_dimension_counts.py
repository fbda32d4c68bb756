"""
Dimension of the non-generating locus
=====================================

Closed forms next to the orbit count dim G + max(r dim A_i - dim H_i).
"""

from unitgen.unitary import dims, general_dim_Zr, orbit_data

print(" n  r  dim Z  c_A  orbit bound")
for n in range(1, 6):
    for r in (1, 2, 3):
        rec = dims(n, r)
        bound = general_dim_Zr(rec.dim_G, orbit_data(n), r)[0] if n > 1 else rec.dim_Z
        print(f"{n:2d} {r:2d} {rec.dim_Z:6d} {rec.c_A:4d} {bound:8d}")

rec = dims(4, 2)
print("components for n=4, r=2:", rec.components)
print("dim X_i:", rec.dim_X, "dim Ybar:", rec.dim_Ybar, "dim Y'bar:", rec.dim_Yprimebar)
