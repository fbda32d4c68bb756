"""
Counting non-generating tuples over F_q
=======================================

N(q) should grow like q^dim Z.  For n = 2, r = 1 the dimension is 7.
"""

import math

from unitgen.census import exponent_fit, run_exhaustive, run_sampled

reports = [run_exhaustive(2, 1, q) for q in (2, 3, 5)]
for rep in reports:
    print(f"q={rep.q}: N = {rep.nongen} of {rep.total}, log_q N = {math.log(rep.nongen, rep.q):.3f}")
fit = exponent_fit(reports)
print(f"fitted exponent {fit.slope:.3f}, predicted {fit.predicted}")

# classified counts: invariant lines (rational or only over an extension), Y and Y'
rep = run_exhaustive(2, 1, 3, classify=True)
print("classes at q=3:", rep.classes)

# sampling: frequency * q^c_A stays of order one
rep = run_sampled(2, 2, 7, 100_000, seed=0)
print(f"(n,r)=(2,2), q=7: frequency {rep.frequency:.2e}, Wilson 95% "
      f"[{rep.wilson95[0]:.2e}, {rep.wilson95[1]:.2e}], scaled {rep.scaled_frequency:.2f}")
