from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitgen.exactmath import (
    GF, BudgetExceeded, FieldError, Matrix, Q, Subspace, SymmetryKind, charpoly, det_batch,
    enumerate_subspaces, field_of_order, gaussian_binomial, kernel, parse_field, perp, rref,
    symmetry_kind,
)
from unitgen.exactmath.linalg import leibniz_det_batch
from unitgen.exactmath.polys import is_irreducible, lowest_irreducible

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(2, 3), GF(3, 2)]


# -- fields -------------------------------------------------------------------

def test_parse_field_grammar():
    assert parse_field("Q") is Q
    assert parse_field("F5") is GF(5)
    assert parse_field("F2^3") is GF(2, 3)
    assert GF(2, 3).order == 8 and GF(2, 3).characteristic == 2
    assert Q.cardinality == float("inf")
    for bad in ["F4", "F1", "G5", "F2^0", "Q2"]:
        with pytest.raises(FieldError):
            parse_field(bad)


def test_field_of_order():
    assert field_of_order(9) is GF(3, 2)
    assert field_of_order(7) is GF(7)
    with pytest.raises(FieldError):
        field_of_order(12)


def test_moduli_are_first_irreducible():
    # brute force over all monic polynomials of the degree, in the documented order
    assert GF(2, 2).modulus == (1, 1, 1)
    assert GF(2, 3).modulus == (1, 1, 0, 1)
    assert GF(3, 2).modulus == (1, 0, 1)
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)]:
        f = lowest_irreducible(p, k)
        # for degree <= 3, irreducible means no roots
        if k <= 3:
            roots = [x for x in range(p) if sum(c * x**i for i, c in enumerate(f)) % p == 0]
            assert roots == []
        assert is_irreducible(f, p)


@pytest.mark.parametrize("F", [f for f in FIELDS if f.is_finite])
def test_field_axioms_exhaustive_small(F):
    e = F.elements()
    x, y, z = np.meshgrid(e, e, e, indexing="ij")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    assert np.all(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)))
    assert np.all(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)))
    assert np.all(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)))
    nz = e[e != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == F.one)
    assert np.all(F.add(e, F.neg(e)) == F.zero)


@pytest.mark.parametrize("F", [f for f in FIELDS if f.is_finite])
def test_frobenius_is_ring_homomorphism(F):
    rng = np.random.default_rng(3)
    x = F.random(rng, 1000)
    y = F.random(rng, 1000)
    fr = F.frobenius
    assert np.all(fr(F.add(x, y)) == F.add(fr(x), fr(y)))
    assert np.all(fr(F.mul(x, y)) == F.mul(fr(x), fr(y)))


def test_embedding_is_homomorphism():
    small, big = GF(2, 2), GF(2, 4)
    e = small.elements()
    x, y = np.meshgrid(e, e)
    emb = lambda v: small.embed(v, big)  # noqa: E731
    assert np.all(emb(small.mul(x, y)) == big.mul(emb(x), emb(y)))
    assert np.all(emb(small.add(x, y)) == big.add(emb(x), emb(y)))
    assert len(set(emb(e).tolist())) == 4


# -- rref, kernel, perp ---------------------------------------------------------

def test_rref_examples():
    R, rank, piv = rref(Matrix.identity(GF(5), 3))
    assert rank == 3 and np.array_equal(R.a, GF(5).eye(3))
    R, rank, _ = rref(Matrix.zeros(Q, 2, 4))
    assert rank == 0 and np.all(R.a == 0)
    R, rank, piv = rref(Matrix(Q, [[1, 2], [2, 4]]))
    assert rank == 1 and R.a.tolist() == [[1, 2], [0, 0]] and piv == (0,)


def test_kernel_examples():
    n = 3
    assert kernel(Matrix.identity(GF(7), n)).dim == 0
    assert kernel(Matrix.zeros(GF(3), 2)) == Subspace.full(GF(3), 2)
    K = kernel(Matrix(GF(2), [[1, 1]]))
    assert K == Subspace(GF(2), 2, [[1, 1]])


def test_perp_examples():
    F = Q
    V1 = Subspace(F, 3, [[1, 0, 0]])
    assert perp(V1) == Subspace(F, 3, [[0, 1, 0], [0, 0, 1]])
    assert perp(Subspace.full(F, 3)).dim == 0
    W = Subspace(GF(2), 2, [[1, 1]])
    assert perp(W) == W


def test_subspace_ops_examples():
    F = GF(5)
    e1, e2 = Subspace(F, 2, [[1, 0]]), Subspace(F, 2, [[0, 1]])
    assert e1 + e2 == Subspace.full(F, 2)
    assert (e1 & e2).dim == 0
    rng = np.random.default_rng(0)
    V = Subspace(F, 4, F.random(rng, (2, 4)))
    assert V & V == V
    with pytest.raises(ValueError):
        _ = e1 + Subspace(F, 3, [[1, 0, 0]])


def _random_subspace(F, n, rng):
    d = int(rng.integers(0, n + 1))
    return Subspace(F, n, F.random(rng, (d, n))) if d else Subspace.zero(F, n)


@pytest.mark.parametrize("F", FIELDS)
def test_rank_transpose_and_dimension_formula(F):
    rng = np.random.default_rng(11)
    for _ in range(20):
        r, c = rng.integers(1, 5, size=2)
        m = Matrix(F, F.random(rng, (int(r), int(c))))
        assert m.rank() == m.T.rank()
        assert kernel(m).dim == m.cols - m.rank()
        V, W = _random_subspace(F, 4, rng), _random_subspace(F, 4, rng)
        assert (V + W).dim + (V & W).dim == V.dim + W.dim
        assert V.dim + perp(V).dim == 4
        assert perp(perp(V)) == V
        assert (V <= W) == (perp(W) <= perp(V))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=0, max_size=4),
       st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=0, max_size=4))
def test_subspace_canonical_form(rows_v, rows_w):
    F = GF(5)
    V = Subspace(F, 3, rows_v) if rows_v else Subspace.zero(F, 3)
    W = Subspace(F, 3, rows_w) if rows_w else Subspace.zero(F, 3)
    # canonical: rebuilding from any spanning set gives identical rows
    assert Subspace(F, 3, V.basis[::-1]) == V if V.dim else True
    piv = V.pivots
    assert list(piv) == sorted(set(piv))
    S = V + W
    assert V <= S and W <= S
    assert hash(S) == hash(Subspace(F, 3, np.concatenate([W.basis, V.basis])))


# -- enumeration ------------------------------------------------------------------

def test_enumeration_examples():
    assert len(list(enumerate_subspaces(GF(2), 2, 1))) == 3
    assert len(list(enumerate_subspaces(GF(3), 2, 1))) == 4
    q = 5
    expected = (q**4 - 1) * (q**4 - q) // ((q**2 - 1) * (q**2 - q))
    assert expected == 806
    assert len(list(enumerate_subspaces(GF(5), 4, 2))) == expected


@pytest.mark.parametrize("q", [2, 3, 5])
def test_enumeration_matches_gaussian_binomial(q):
    F = GF(q)
    for n in range(0, 5):
        for d in range(0, n + 1):
            if gaussian_binomial(n, d, q) > 5000:
                continue
            subs = list(enumerate_subspaces(F, n, d))
            assert len(subs) == gaussian_binomial(n, d, q)
            assert len(set(subs)) == len(subs)
            assert all(s.dim == d for s in subs)


def test_enumeration_complete_for_lines_bruteforce():
    # every nonzero vector's span appears exactly once
    F = GF(3)
    lines = set(enumerate_subspaces(F, 3, 1))
    spans = {Subspace(F, 3, [v]) for v in product(range(3), repeat=3) if any(v)}
    assert lines == spans


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_subspaces(GF(7), 4, 2, budget=100)
    assert info.value.projected == gaussian_binomial(4, 2, 7)


# -- determinants, charpoly, symmetry --------------------------------------------

@pytest.mark.parametrize("F", FIELDS)
def test_det_batch_matches_leibniz(F):
    rng = np.random.default_rng(5)
    for n in (1, 2, 3, 4):
        mats = F.random(rng, (30, n, n))
        assert np.all(det_batch(F, mats) == leibniz_det_batch(F, mats))


def test_charpoly_and_det_over_q():
    m = Matrix(Q, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert m.det() == 18
    assert charpoly(Q, m.a) == [-18, 24, -9, 1]
    inv = m.inv()
    assert inv @ m == Matrix.identity(Q, 3)
    assert inv.a[0, 0] == Fraction(11, 18)


def test_symmetry_kind_examples():
    assert symmetry_kind(Matrix.identity(Q, 3)) is SymmetryKind.SYMMETRIC
    assert symmetry_kind(Matrix(Q, [[0, -1], [1, 0]])) is SymmetryKind.ALTERNATING
    assert symmetry_kind(Matrix.identity(GF(2), 2)) is SymmetryKind.SYMMETRIC
    assert symmetry_kind(Matrix(GF(2), [[0, 1], [1, 0]])) is SymmetryKind.ALTERNATING
    assert symmetry_kind(Matrix(Q, [[1, 2], [3, 4]])) is SymmetryKind.NEITHER
    with pytest.raises(ValueError):
        symmetry_kind(Matrix(Q, [[1, 2]]))
