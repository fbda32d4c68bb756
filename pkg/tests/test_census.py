import itertools
import json
import math

import numpy as np
import pytest

from unitgen import census
from unitgen._kernel import FieldTables, scan_range, tuple_closure_dim
from unitgen.census import (
    CensusReport, class_labels, decode_index, exponent_fit, run_exhaustive, run_sampled,
)
from unitgen.exactmath import GF, BudgetExceeded, Matrix, enumerate_subspaces
from unitgen.mualg import closure_dim, generates
from unitgen.unitary import make_model


def _bruteforce_nongen(n, r, q):
    """Non-generating flags in enumeration order, from the exact closure."""
    F = GF(q)
    A = make_model(n, F).algebra
    D = 2 * n * n
    flags = []
    for digits in itertools.product(range(q), repeat=D * r):
        T = [F.asarray(list(digits[t * D:(t + 1) * D])) for t in range(r)]
        flags.append(not generates(A, T))
    return np.array(flags)


@pytest.fixture(scope="module")
def oracle_q2():
    return _bruteforce_nongen(2, 1, 2)


def test_exhaustive_q2_matches_exact_closure(oracle_q2):
    rep = run_exhaustive(2, 1, 2)
    assert rep.nongen == oracle_q2.sum() == 172
    assert rep.total == 2**8


def test_exhaustive_q3_matches_exact_closure():
    oracle = _bruteforce_nongen(2, 1, 3)
    rep = run_exhaustive(2, 1, 3)
    assert rep.nongen == oracle.sum() == 2961


def test_kernel_flags_follow_enumeration_order(oracle_q2):
    F = GF(2)
    tables = FieldTables(F)
    flags = np.zeros(256, dtype=np.int8)
    scan_range(0, 256, 2, 1, 2, *tables.args(), flags)
    assert np.array_equal(flags.astype(bool), oracle_q2)
    for idx in (0, 1, 77, 255):
        digits = decode_index(idx, 2, 1, 2)
        assert list(digits) == list(next(itertools.islice(
            itertools.product(range(2), repeat=8), idx, None)))


@pytest.mark.parametrize("F", [GF(2, 2), GF(5), GF(3, 2)])
def test_kernel_matches_exact_closure_dims(F):
    n = 2
    M = make_model(n, F)
    tables = FieldTables(F)
    rng = np.random.default_rng(F.order)
    for _ in range(40):
        r = int(rng.integers(1, 3))
        codes = [rng.integers(0, F.order, size=(2, n, n)) for _ in range(r)]
        elems = F.elements()
        exact = closure_dim(M.algebra, [np.concatenate([elems[c[0]].ravel(), elems[c[1]].ravel()])
                                        for c in codes])
        assert tuple_closure_dim(F, [(c[0], c[1]) for c in codes], tables) == exact


def _class_oracle_q2():
    """Per-class counts at (n, r, q) = (2, 1, 2) by direct search over all
    lines of F2^2 and F4^2 and all 2x2 matrices over F2."""
    F, E = GF(2), GF(2, 2)
    mats = [Matrix(F, np.array(e).reshape(2, 2)) for e in itertools.product(range(2), repeat=4)]
    inv = [p for p in mats if p.is_invertible()]
    sym = [p for p in inv if p.T == p and any(p.a[i, i] for i in range(2))]
    alt = [p for p in inv if p.T == p and not any(p.a[i, i] for i in range(2))]
    lines2 = list(enumerate_subspaces(F, 2, 1))
    lines4 = list(enumerate_subspaces(E, 2, 1))
    A = make_model(2, F).algebra
    counts = dict.fromkeys(class_labels(2), 0)
    for e in itertools.product(range(2), repeat=8):
        x = F.asarray(list(e))
        if generates(A, [x]):
            continue
        a = Matrix(F, x[:4].reshape(2, 2))
        b = Matrix(F, x[4:].reshape(2, 2))
        rational = any(V.is_invariant(a) and V.is_invariant(b.T) for V in lines2)
        geometric = any(V.is_invariant(a.to_field(E)) and V.is_invariant(b.T.to_field(E))
                        for V in lines4)
        labels = set()
        if rational:
            labels.add("X1_rational")
        elif geometric:
            labels.add("X1_geometric")
        if any(p @ a == b @ p for p in sym):
            labels.add("Y")
        if any(p @ a == b @ p for p in alt):
            labels.add("Yprime")
        for lab in labels:
            counts[lab] += 1
        if len({lab.split("_")[0] for lab in labels}) > 1:
            counts["multi"] += 1
    return counts


def test_classified_counts_q2_match_direct_search():
    rep = run_exhaustive(2, 1, 2, classify=True)
    assert rep.classes == _class_oracle_q2()
    assert all(v <= rep.nongen for v in rep.classes.values())


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_n1_counts_are_q_to_the_r(q, r):
    if q ** (2 * r) > 10**5:
        pytest.skip("covered by the acceptance suite")
    rep = run_exhaustive(1, r, q)
    assert rep.nongen == q**r
    assert rep.predicted_dim == r and rep.c_A == r


def test_report_invariants_and_roundtrip():
    rep = run_exhaustive(2, 1, 3)
    assert rep.total == 3**8 and 0 <= rep.nongen <= rep.total
    assert rep.wilson95[0] <= rep.frequency <= rep.wilson95[1]
    assert math.isclose(rep.exponent, math.log(rep.nongen, 3))
    assert math.isclose(rep.scaled_frequency, rep.frequency * 3)
    back = CensusReport.from_dict(json.loads(rep.to_json()))
    assert back == rep


def test_exhaustive_independent_of_workers_and_chunks():
    a = run_exhaustive(2, 1, 2, classify=True, workers=1)
    b = run_exhaustive(2, 1, 2, classify=True, workers=2, chunk=50)
    assert a.content() == b.content()
    a = run_exhaustive(2, 1, 3, workers=1)
    b = run_exhaustive(2, 1, 3, workers=3, chunk=1000)
    assert a.content() == b.content()


def test_sampled_independent_of_workers():
    n = census.BLOCK + 1000
    a = run_sampled(2, 1, 3, n, seed=5, workers=1)
    b = run_sampled(2, 1, 3, n, seed=5, workers=2)
    assert a.content() == b.content()
    c = run_sampled(2, 1, 3, n, seed=6)
    assert c.nongen != a.nongen or c.seed != a.seed


def test_sampled_frequency_consistent_with_exact():
    rep = run_sampled(2, 1, 2, 20000, seed=1)
    exact = 172 / 256
    lo, hi = rep.wilson95
    assert lo - 0.01 <= exact <= hi + 0.01


def test_sampled_classify_labels():
    rep = run_sampled(2, 1, 3, 2000, seed=0, classify=True)
    assert set(rep.classes) == set(class_labels(2))
    assert all(v <= rep.nongen for v in rep.classes.values())


def test_sampled_rejects_empty():
    with pytest.raises(ValueError):
        run_sampled(2, 1, 3, 0)


def test_budget_refusal(monkeypatch):
    with pytest.raises(BudgetExceeded) as info:
        run_exhaustive(2, 1, 7, budget=1000)
    assert info.value.projected == 7**8
    monkeypatch.setenv("UNITGEN_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        run_exhaustive(2, 1, 2)


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "ck.json"
    full = run_exhaustive(2, 1, 3, chunk=1000, checkpoint=path)
    data = json.loads(path.read_text())
    assert len(data["done"]) == math.ceil(3**8 / 1000)
    # drop half of the chunks and resume
    keys = sorted(data["done"], key=int)
    data["done"] = {k: data["done"][k] for k in keys[: len(keys) // 2]}
    path.write_text(json.dumps(data))
    resumed = run_exhaustive(2, 1, 3, chunk=1000, checkpoint=path)
    assert resumed.content() == full.content()
    with pytest.raises(ValueError):
        run_exhaustive(2, 1, 3, chunk=500, checkpoint=path)


def _fake(q, nongen, mode="exhaustive", n=2, r=1):
    rep = run_exhaustive(1, 1, 2)
    d = rep.to_dict()
    d.update(q=q, nongen=nongen, mode=mode, n=n, r=r, predicted_dim=7)
    return CensusReport.from_dict(d)


def test_exponent_fit_exact_power():
    fit = exponent_fit([_fake(q, q**7) for q in (2, 3, 5, 7)])
    assert math.isclose(fit.slope, 7.0) and abs(fit.intercept) < 1e-9
    assert fit.predicted == 7 and fit.qs == [2, 3, 5, 7]


def test_exponent_fit_errors():
    with pytest.raises(ValueError):
        exponent_fit([_fake(2, 10)])
    with pytest.raises(ValueError):
        exponent_fit([_fake(2, 10), _fake(3, 20, mode="sampled")])
    with pytest.raises(ValueError):
        exponent_fit([_fake(2, 10), _fake(3, 20, r=2)])
    with pytest.raises(ValueError):
        exponent_fit([_fake(2, 10), _fake(3, 0)])
