"""Explicit single generators and brute-force generator counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactmath import BudgetExceeded, FieldCtx, Matrix, Subspace
from ..mualg import InvAlgebra, SubalgebraSpan, closure, closure_dim
from .model import hermitian_algebra, make_model, matrix_algebra, omega, upper_shift

__all__ = ["GeneratorSet", "explicit_generators", "gen_count_bruteforce", "GenSearch",
           "pick_alpha", "coordinate_subspace", "KINDS"]

KINDS = ("full", "AV", "BI", "BOmega", "BOmega2", "unitary-finite", "orthogonal", "symplectic")


@dataclass
class GeneratorSet:
    kind: str
    n: int
    field: FieldCtx
    algebra: InvAlgebra
    elements: tuple
    target_dim: int
    closure_dim: int
    escalated: bool = False
    params: dict = dc_field(default_factory=dict)
    matches_target: bool = True

    @property
    def ok(self) -> bool:
        return self.closure_dim == self.target_dim and self.matches_target


def coordinate_subspace(F: FieldCtx, n: int, k: int) -> Subspace:
    """V(k) = K e_1 + ... + K e_k."""
    return Subspace(F, n, F.eye(n)[:k])


def _is_bad_alpha(F: FieldCtx, a) -> bool:
    return a == F.zero or a == F.one or a == F.neg(F.one)


def pick_alpha(F: FieldCtx):
    """First element outside {0, 1, -1}, or None when the field has none."""
    if F.kind == "Q":
        return F(2)
    for a in F.elements():
        if not _is_bad_alpha(F, a):
            return a
    return None


def _check(gs: GeneratorSet, target: SubalgebraSpan | None = None) -> GeneratorSet:
    span = closure(gs.algebra, gs.elements)
    gs.closure_dim = span.dim
    gs.matches_target = target is None or span == target
    return gs


def explicit_generators(kind: str, n: int, field: FieldCtx | None = None, *, k: int | None = None,
                        alpha=None, d=None, q: int | None = None) -> GeneratorSet:
    """Build the named generating tuple and verify it by closure.

    kinds: ``full`` (u, d_1n) for A_n; ``AV`` (u, d_1k + alpha d_{k+1,n}) for
    A_{V(k)}; ``BI`` and ``BOmega`` graph elements of u; ``BOmega2`` a pair
    found by search (n = 2); ``unitary-finite`` alpha I + u in M_n(F_{q^2});
    ``orthogonal`` u in M_n with a -> d^-1 a^t d (d diagonal); ``symplectic`` u in M_n
    with a -> Omega a^t Omega^-1.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {KINDS}")
    if kind == "unitary-finite":
        if q is None:
            q = field.order if field is not None else None
        if q is None:
            raise ValueError("unitary-finite needs q")
        A = hermitian_algebra(n, q)
        F = A.field
        m = n * n
        x = F.zeros(2 * m)
        for i in range(n):
            x[m + i * n + i] = F.one  # theta on the diagonal
            if i + 1 < n:
                x[i * n + i + 1] = F.one
        return _check(GeneratorSet(kind, n, F, A, (x,), 2 * m, 0, params={"q": q, "alpha": "theta"}))
    if field is None:
        raise ValueError(f"{kind} needs a field")
    F = field
    if kind in ("orthogonal", "symplectic"):
        if kind == "symplectic":
            if n % 2 or n <= 2:
                raise ValueError("the Omega-involution single generator needs even n > 2")
            g = omega(F, n).inv()  # Omega a^t Omega^-1 = g^-1 a^t g
            params = {}
        else:
            diag = [F.one] * n if d is None else [F(x) for x in d]
            if any(x == F.zero for x in diag):
                raise ValueError("orthogonal needs an invertible diagonal d")
            g = Matrix(F, np.diag(np.array(diag, dtype=object)))
            params = {"d": [F.fmt(x) for x in diag]}
        A = matrix_algebra(n, F, g)
        x = upper_shift(F, n).a.ravel().copy()
        return _check(GeneratorSet(kind, n, F, A, (x,), n * n, 0, params=params))

    escalated = False
    if kind == "AV":
        if k is None or not 1 <= k <= n - 1:
            raise ValueError("AV needs 1 <= k <= n-1")
        if alpha is not None:
            alpha = F(alpha)
            if _is_bad_alpha(F, alpha):
                raise ValueError("alpha must avoid 0, 1 and -1")
        else:
            alpha = pick_alpha(F)
            if alpha is None:
                if not F.is_finite:
                    raise ValueError("no admissible alpha")  # pragma: no cover
                F = F.extension(2)
                escalated = True
                alpha = pick_alpha(F)
    M = make_model(n, F)
    A = M.algebra
    if kind == "full":
        x = M.pair(M.u, M.d(1, n))
        return _check(GeneratorSet(kind, n, F, A, (x,), 2 * n * n, 0))
    if kind == "AV":
        b = M.d(1, k) + M.d(k + 1, n).scale(alpha)
        x = M.pair(M.u, b)
        target = M.subalg_AV(coordinate_subspace(F, n, k))
        gs = GeneratorSet(kind, n, F, A, (x,), target.dim, 0, escalated,
                          params={"k": k, "alpha": F.fmt(alpha)})
        return _check(gs, target)
    if kind == "BI":
        target = M.subalg_Bp(M.I)
        return _check(GeneratorSet(kind, n, F, A, (M.pair(M.u, M.u),), n * n, 0), target)
    if kind == "BOmega":
        if n % 2 or n <= 2:
            raise ValueError("a single generator of B_[Omega] needs even n > 2")
        W = M.Omega
        target = M.subalg_Bp(W)
        x = M.pair(M.u, W @ M.u @ W.inv())
        return _check(GeneratorSet(kind, n, F, A, (x,), n * n, 0), target)
    # BOmega2
    if n != 2:
        raise ValueError("BOmega2 is the n = 2 pair")
    res = gen_count_bruteforce("BOmega", 2, F, n=2)
    if res.min_r is None:
        raise ValueError(f"no generating pair of B_[Omega] found over {F.spec}")
    target = M.subalg_Bp(M.Omega)
    return _check(GeneratorSet(kind, n, F, A, res.witness, n * n, 0), target)


@dataclass
class GenSearch:
    target: str
    target_dim: int
    min_r: int | None
    witness: tuple
    max_dim: dict  # r -> largest closure dimension met among searched tuples
    searched: dict  # r -> number of tuples examined


def _target_span(target: str, n: int, F: FieldCtx, k=None) -> tuple[InvAlgebra, SubalgebraSpan]:
    M = make_model(n, F)
    if target == "BOmega":
        return M.algebra, M.subalg_Bp(M.Omega)
    if target == "BI":
        return M.algebra, M.subalg_Bp(M.I)
    if target == "AV":
        return M.algebra, M.subalg_AV(coordinate_subspace(F, n, k))
    if target == "full":
        return M.algebra, SubalgebraSpan(M.algebra, Subspace.full(F, M.dim))
    raise ValueError(f"unknown target {target!r}")


def gen_count_bruteforce(target: str, r: int, field: FieldCtx, n: int = 2, k: int | None = None,
                         budget: int = 10**6) -> GenSearch:
    """Least r' <= r such that some r'-tuple of elements of the target generates it.

    Tuples are drawn exhaustively from the target span in mixed-radix order;
    at each r' below the answer every tuple is examined, so ``max_dim``
    certifies that none generates.
    """
    if not field.is_finite:
        raise ValueError("brute-force search needs a finite field")
    A, span = _target_span(target, n, field, k)
    dim = span.dim
    q = field.order
    basis = np.array(span.space.vectors(), dtype=field.dtype).reshape(dim, A.dim)
    max_dim, searched = {}, {}
    for rr in range(r + 1):
        count = q ** (rr * dim)
        if count > budget:
            raise BudgetExceeded(count, budget, f"{rr}-tuples in {target}")
        best = 0
        seen = 0
        coeff_vectors = itertools.product(field.elements().tolist(), repeat=dim)
        elements = [field.sum(field.mul(np.array(c, dtype=field.dtype)[:, None], basis), axis=0)
                    for c in coeff_vectors] if dim else [A.unit]
        for tup in itertools.product(elements, repeat=rr):
            seen += 1
            cd = closure_dim(A, list(tup))
            best = max(best, cd)
            if cd == dim:
                max_dim[rr], searched[rr] = best, seen
                return GenSearch(target, dim, rr, tuple(tup), max_dim, searched)
        max_dim[rr], searched[rr] = best, seen
    return GenSearch(target, dim, None, (), max_dim, searched)

