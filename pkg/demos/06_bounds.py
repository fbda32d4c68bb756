"""
Generator bounds over rings of Krull dimension d
================================================
"""

from unitgen.bounds import bounds_table, ceil_half, table_csv, upper_bound

# the floor formula equals the least r with (2r-1)(n-1) > d
for n, d in [(2, 0), (2, 4), (3, 4), (4, 11)]:
    res = upper_bound(n, d)
    print(f"n={n} d={d}: upper {res.value}, least r {res.least_r}")

print("ceil(5/2) =", ceil_half(5))
print(table_csv(bounds_table(3, 8)))
