import numpy as np
import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from unitgen.exactmath import GF, Matrix, Q, Subspace
from unitgen.mualg import (
    AlgebraAxiomError, SubalgebraSpan, base_change, closure, derivation_algebra, generates,
    is_automorphism, load_algebra, make_algebra,
)
from unitgen.mualg import closure_dim
from unitgen.unitary import make_model, matrix_algebra, upper_shift

KK_SWAP = {"field": "F5", "dim": 2, "product": [[0, 0, 0, 1], [1, 1, 1, 1]],
           "involution": [[0, 1], [1, 0]], "unit": [1, 1]}


def _m2_transpose(spec):
    prod = []
    for i in range(2):
        for j in range(2):
            for l in range(2):
                prod.append([i * 2 + j, j * 2 + l, i * 2 + l, 1])
    inv = np.zeros((4, 4), dtype=int)
    for i in range(2):
        for j in range(2):
            inv[j * 2 + i, i * 2 + j] = 1
    return {"field": spec, "dim": 4, "product": prod, "involution": inv.tolist(),
            "unit": [1, 0, 0, 1]}


def _random_tuple(A, r, rng):
    return [A.field.random(rng, A.dim) for _ in range(r)]


def _image_span(A, g: Matrix, S: SubalgebraSpan) -> Subspace:
    return Subspace(A.field, A.dim, [g.apply(v) for v in S.space.vectors()])


# -- construction ---------------------------------------------------------------

def test_make_algebra_examples():
    A = make_algebra(KK_SWAP)
    assert A.dim == 2
    B = make_algebra(_m2_transpose("F5"))
    assert B.dim == 4
    x = B.element([1, 2, 3, 4])
    # (x*)* = x and the transpose swaps the off-diagonal coordinates
    assert B.star(x).tolist() == [1, 3, 2, 4]
    assert np.array_equal(B.star(B.star(x)), x)


def test_make_algebra_rejects_nonassociative():
    # commutative, (e1 e1) e2 = 0 but e1 (e1 e2) = e2
    desc = {"field": "Q", "dim": 3,
            "product": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [0, 2, 2, 1], [2, 0, 2, 1],
                        [1, 1, 2, 1], [1, 2, 1, 1], [2, 1, 1, 1]],
            "involution": np.eye(3, dtype=int).tolist(), "unit": [1, 0, 0]}
    with pytest.raises(AlgebraAxiomError) as info:
        make_algebra(desc)
    assert "associative" in str(info.value) and len(info.value.witness) == 3


def test_make_algebra_rejects_bad_unit_and_involution():
    bad_unit = dict(KK_SWAP, unit=[1, 0])
    with pytest.raises(AlgebraAxiomError):
        make_algebra(bad_unit)
    # identity map on M_2 is not an anti-automorphism
    bad_sigma = dict(_m2_transpose("F5"), involution=np.eye(4, dtype=int).tolist())
    with pytest.raises(AlgebraAxiomError, match="anti-automorphism"):
        make_algebra(bad_sigma)
    # not of order two
    bad_order = dict(KK_SWAP, involution=[[0, 2], [1, 0]])
    with pytest.raises(AlgebraAxiomError):
        make_algebra(bad_order)


def test_load_algebra_roundtrip(tmp_path):
    import json

    A = make_model(2, GF(3)).algebra
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(A.description()))
    B = load_algebra(path)
    assert B.fingerprint() == A.fingerprint()


# -- closure and generation ---------------------------------------------------------

def test_closure_examples():
    A = make_algebra(KK_SWAP)
    assert closure(A, []).dim == 1
    assert generates(A, [A.element([1, 0])])
    assert not generates(A, [A.element([3, 3])])
    M = make_model(2, GF(5))
    assert closure(M.algebra, [M.pair(M.u, M.d(1, 2))]).dim == 8
    M3 = make_model(3, Q)
    assert generates(M3.algebra, [M3.pair(M3.u, M3.d(1, 3))])


def test_bomega_graph_element_closure_small():
    M = make_model(2, GF(5))
    rng = np.random.default_rng(2)
    Om, Oinv = M.Omega, M.Omega.inv()
    for _ in range(20):
        x = Matrix(GF(5), GF(5).random(rng, (2, 2)))
        b = M.pair(x, Om @ x @ Oinv)
        assert closure(M.algebra, [b]).dim <= 2


@pytest.mark.parametrize("F", [GF(2), GF(3), GF(2, 2), Q])
def test_spin_and_rounds_agree(F):
    rng = np.random.default_rng(7)
    algebras = [make_model(2, F).algebra, matrix_algebra(2, F)]
    for A in algebras:
        for r in (0, 1, 2):
            for _ in range(8):
                T = _random_tuple(A, r, rng)
                S1 = closure(A, T)
                S2 = closure(A, T, method="rounds")
                assert S1 == S2
                assert S1.is_closed()
                assert closure_dim(A, T) == S1.dim


def test_closure_rounds_rejects_unknown_method():
    A = make_algebra(KK_SWAP)
    with pytest.raises(ValueError):
        closure(A, [], method="words")


@pytest.mark.parametrize("F", [GF(2), GF(3), GF(5)])
def test_closure_idempotent_monotone_and_symmetric(F):
    rng = np.random.default_rng(17)
    A = make_model(2, F).algebra
    for _ in range(25):
        T = _random_tuple(A, 2, rng)
        S = closure(A, T)
        assert closure(A, S.space.vectors()) == S
        extra = _random_tuple(A, 1, rng)
        assert S <= closure(A, T + extra)
        assert closure(A, T[::-1]) == S
        assert closure(A, [A.star(T[0]), T[1]]).dim == S.dim


@pytest.mark.parametrize("n", [2, 3])
def test_closure_commutes_with_automorphisms(n):
    F = GF(7)
    M = make_model(n, F)
    A = M.algebra
    rng = np.random.default_rng(n)
    done = 0
    while done < 10:
        c = Matrix(F, F.random(rng, (n, n)))
        if not c.is_invertible():
            continue
        for swap in (False, True):
            g = M.act_matrix(c, swap=swap)
            assert is_automorphism(A, g)
            T = _random_tuple(A, 1, rng)
            if rng.random() < 0.5:
                # bias towards non-generating tuples so the spans are proper
                a, _ = M.split(T[0])
                T = [M.pair(a, a)]
            lhs = closure(A, [g.apply(t) for t in T]).space
            assert lhs == _image_span(A, g, closure(A, T))
        done += 1


def test_non_automorphism_detected():
    M = make_model(2, GF(5))
    g = Matrix.identity(GF(5), 8)
    assert is_automorphism(M.algebra, g)
    g2 = Matrix(GF(5), np.diag([2] + [1] * 7))
    assert not is_automorphism(M.algebra, g2)


# -- base change ------------------------------------------------------------------

def test_base_change_same_field_is_noop():
    A = make_model(2, GF(3)).algebra
    assert base_change(A, GF(3)) is A


def test_base_change_rejects_wrong_characteristic():
    with pytest.raises(ValueError):
        base_change(make_model(2, GF(2)).algebra, GF(3, 2))


def test_base_change_preserves_closure_dims_f2_to_f4():
    small, big = GF(2), GF(2, 2)
    A = make_model(2, small).algebra
    B = base_change(A, big, validate=True)
    rng = np.random.default_rng(1)
    for _ in range(100):
        T = _random_tuple(A, 1, rng)
        assert closure_dim(A, T) == closure_dim(B, [small.embed(t, big) for t in T])


def test_base_change_tower_generation():
    F2, F4, F16 = GF(2), GF(2, 2), GF(2, 4)
    A2 = make_model(2, F2).algebra
    A4 = base_change(A2, F4)
    A16 = base_change(A4, F16)
    rng = np.random.default_rng(5)
    seen = set()
    for _ in range(40):
        T = _random_tuple(A2, 1, rng)
        T4 = [F2.embed(t, F4) for t in T]
        T16 = [F4.embed(t, F16) for t in T4]
        g = generates(A2, T)
        assert g == generates(A4, T4) == generates(A16, T16)
        seen.add(g)
    assert seen == {True, False}


def test_base_change_transpose_m2_f3_to_f9():
    A = matrix_algebra(2, GF(3))
    u = upper_shift(GF(3), 2).a.ravel()
    assert generates(A, [u])
    B = base_change(A, GF(3, 2))
    assert generates(B, [GF(3).embed(u, GF(3, 2))])


# -- derivations ------------------------------------------------------------------

def _oracle_derivation_dim(n):
    """Dense rank computation over QQ from explicitly built structure constants."""
    m = n * n
    N = 2 * m
    basis = []
    for f in range(2):
        for i in range(n):
            for j in range(n):
                a = np.zeros((2, n, n), dtype=np.int64)
                a[f, i, j] = 1
                basis.append(a)

    def coords(x):
        return x.reshape(-1)

    def prod(x, y):
        return np.stack([x[0] @ y[0], x[1] @ y[1]])

    def star(x):
        return np.stack([x[1].T, x[0].T])

    L = [np.array([coords(prod(e, f)) for f in basis]).T for e in basis]  # L[i] e_j
    R = [np.array([coords(prod(f, e)) for f in basis]).T for e in basis]  # R[j] e_i
    S = np.array([coords(star(e)) for e in basis]).T
    one = coords(np.stack([np.eye(n, dtype=np.int64)] * 2))
    I = np.eye(N, dtype=np.int64)
    # column-major vec: D v = (v^T kron I) vec(D)
    blocks = []
    for i in range(N):
        ei = I[:, i]
        for j in range(N):
            ej = I[:, j]
            cij = coords(prod(basis[i], basis[j]))
            blocks.append(np.kron(cij[None, :], I) - np.kron(ei[None, :], R[j])
                          - np.kron(ej[None, :], L[i]))
    blocks.append(np.kron(I, S) - np.kron(S.T, I))
    blocks.append(np.kron(one[None, :], I))
    sysm = np.concatenate(blocks)
    sysm = sysm[np.any(sysm != 0, axis=1)]
    dm = DomainMatrix([[QQ(int(v)) for v in row] for row in sysm], sysm.shape, QQ)
    return N * N - dm.rank()


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 3), (3, 8)])
def test_derivation_dims_against_dense_oracle(n, expected):
    oracle = _oracle_derivation_dim(n)
    assert oracle == expected
    D = derivation_algebra(make_model(n, Q).algebra)
    assert D.dim == oracle and not D.informational


def test_derivations_satisfy_leibniz_rule():
    A = make_model(2, Q).algebra
    D = derivation_algebra(A)
    rng = np.random.default_rng(0)
    for d in D.basis:
        assert not np.any(d.apply(A.unit) != 0)
        for _ in range(5):
            x = Q.asarray(rng.integers(-3, 4, A.dim))
            y = Q.asarray(rng.integers(-3, 4, A.dim))
            lhs = d.apply(A.mul(x, y))
            rhs = A.add(A.mul(d.apply(x), y), A.mul(x, d.apply(y)))
            assert np.all(lhs == rhs)
            assert np.all(d.apply(A.star(x)) == A.star(d.apply(x)))


def test_derivations_informational_in_positive_characteristic():
    assert derivation_algebra(make_model(2, GF(3)).algebra).informational
