"""Generator-count bounds for degree-n Azumaya algebras with unitary involution
over a ring of Krull dimension d.  Integer arithmetic throughout."""

from __future__ import annotations

import csv
import io
from collections.abc import Callable, Sequence
from dataclasses import dataclass

__all__ = [
    "upper_bound", "lower_bound_examples", "ceil_half", "noetherian_bound", "least_r_check",
    "codim_formula", "bounds_table", "table_csv", "n1_analysis", "BoundResult",
]


def codim_formula(n: int) -> Callable[[int], int]:
    """c_A(r): codimension of the non-generating locus in r-tuples."""
    if n == 1:
        return lambda r: r
    return lambda r: (2 * r - 1) * (n - 1)


def least_r_check(c_A: Callable[[int], int] | Sequence[int], d: int,
                    r_max: int | None = None) -> int | None:
    """Least r >= 1 with c_A(r) > d, or None when no r in range qualifies.

    ``c_A`` is a function of r or a table whose entry r-1 is c_A(r).
    """
    if callable(c_A):
        top = r_max if r_max is not None else d + 2
        values = ((r, c_A(r)) for r in range(1, top + 1))
    else:
        if len(c_A) == 0:
            raise ValueError("empty c_A table")
        values = enumerate(c_A, start=1)
    for r, c in values:
        if c > d:
            return r
    return None


@dataclass
class BoundResult:
    n: int
    d: int
    value: int
    least_r: int | None

    @property
    def agrees(self) -> bool:
        return self.value == self.least_r


def upper_bound(n: int, d: int) -> BoundResult:
    """floor(d/(2n-2) + 3/2), with the least r such that c_A(r) > d beside it."""
    if n < 2:
        raise ValueError("n = 1 is not covered by the floor formula; see n1_analysis")
    if d < 0:
        raise ValueError("d must be non-negative")
    value = (2 * d + 6 * n - 6) // (4 * n - 4)
    return BoundResult(n, d, value, least_r_check(codim_formula(n), d))


def n1_analysis(d: int) -> dict:
    """For n = 1, c_A(r) = r, so r-tuples suffice once r > d."""
    return {"n": 1, "d": d, "c_A": "r", "least_r": least_r_check(codim_formula(1), d),
            "note": "n = 1 is excluded from the floor formula"}


def ceil_half(g: int) -> int:
    return (g + 1) // 2


def lower_bound_examples(n: int, d: int) -> dict:
    """Generator count attained by known examples (characteristic 0).

    n > 2: floor(d/(4n-4) + 3/2); n = 2: floor(d/4) + 1.
    """
    if n < 2 or d < 0:
        raise ValueError("need n >= 2 and d >= 0")
    value = d // 4 + 1 if n == 2 else (2 * d + 12 * n - 12) // (8 * n - 8)
    return {"n": n, "d": d, "value": value, "hypothesis": "characteristic 0"}


def noetherian_bound(d: int) -> dict:
    if d < 0:
        raise ValueError("d must be non-negative")
    return {"d": d, "value": d + 1,
            "excludes": "degree-2 central simple algebras with symplectic involution"}


def bounds_table(nmax: int, dmax: int, nmin: int = 2) -> list[dict]:
    rows = []
    for n in range(nmin, nmax + 1):
        for d in range(dmax + 1):
            ub = upper_bound(n, d)
            rows.append({
                "n": n, "d": d, "upper": ub.value, "least_r": ub.least_r,
                "lower": lower_bound_examples(n, d)["value"],
                "noetherian": d + 1,
            })
    return rows


def table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["n", "d", "upper", "least_r", "lower", "noetherian"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
