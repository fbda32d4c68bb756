import csv
import io
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitgen.bounds import (
    bounds_table, ceil_half, codim_formula, lower_bound_examples, n1_analysis, noetherian_bound,
    table_csv, least_r_check, upper_bound,
)


def _floor_upper(n, d):
    """floor(d/(2n-2) + 3/2) in exact rational arithmetic."""
    x = Fraction(d, 2 * n - 2) + Fraction(3, 2)
    return x.numerator // x.denominator


def test_upper_bound_examples():
    assert upper_bound(2, 0).value == 1
    assert upper_bound(2, 4).value == 3
    assert upper_bound(3, 4).value == 2


def test_upper_bound_rejects_n1():
    with pytest.raises(ValueError, match="n = 1"):
        upper_bound(1, 3)
    with pytest.raises(ValueError):
        upper_bound(2, -1)
    info = n1_analysis(3)
    assert info["least_r"] == 4


def test_lower_bound_examples():
    assert lower_bound_examples(2, 8)["value"] == 3
    assert lower_bound_examples(3, 8)["value"] == 2
    assert lower_bound_examples(3, 8)["hypothesis"] == "characteristic 0"
    assert ceil_half(5) == 3 and ceil_half(4) == 2 and ceil_half(0) == 0
    with pytest.raises(ValueError):
        lower_bound_examples(1, 0)


def test_noetherian_bound_examples():
    assert [noetherian_bound(d)["value"] for d in (0, 3, 10)] == [1, 4, 11]
    assert "symplectic" in noetherian_bound(0)["excludes"]


def test_least_r_examples():
    assert least_r_check(codim_formula(4), 11) == 3
    assert upper_bound(4, 11).value == 3
    assert least_r_check(codim_formula(2), 0) == 1
    assert least_r_check(lambda r: 0, 0) is None
    assert least_r_check([0, 0, 0], 0) is None
    assert least_r_check([1, 3, 5], 2) == 2
    with pytest.raises(ValueError):
        least_r_check([], 0)


@given(st.integers(2, 200), st.integers(0, 5000))
def test_upper_bound_is_least_r_and_floor_formula(n, d):
    res = upper_bound(n, d)
    assert res.value == _floor_upper(n, d) == res.least_r
    assert res.agrees


@given(st.integers(2, 60), st.integers(0, 2000))
def test_bound_monotonicity_and_order(n, d):
    u = upper_bound(n, d).value
    assert upper_bound(n + 1, d).value <= u <= upper_bound(n, d + 1).value
    low = lower_bound_examples(n, d)["value"]
    assert low <= u
    if n > 2:
        x = Fraction(d, 4 * n - 4) + Fraction(3, 2)
        assert low == x.numerator // x.denominator
    else:
        assert low == d // 4 + 1


def test_lower_over_upper_tends_to_half():
    for n in (2, 3, 7):
        d = 10**6
        ratio = lower_bound_examples(n, d)["value"] / upper_bound(n, d).value
        assert abs(ratio - 0.5) < 1e-3


def test_table_csv_roundtrip():
    rows = bounds_table(4, 10)
    assert len(rows) == 3 * 11
    parsed = list(csv.DictReader(io.StringIO(table_csv(rows))))
    assert [int(r["upper"]) for r in parsed] == [r["upper"] for r in rows]
    for r in parsed:
        n, d = int(r["n"]), int(r["d"])
        assert int(r["upper"]) == _floor_upper(n, d)
        assert int(r["noetherian"]) == d + 1
