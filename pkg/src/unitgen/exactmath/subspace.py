"""Subspaces of K^n held in canonical RREF, plus exhaustive enumeration."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .fields import FieldCtx
from .linalg import Matrix, kernel_array, rref_array

__all__ = ["Subspace", "enumerate_subspaces", "gaussian_binomial", "BudgetExceeded"]


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its count budget."""

    def __init__(self, projected: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {projected} items, budget is {budget}")
        self.projected = projected
        self.budget = budget


class Subspace:
    """A subspace of ``field**n``; equal subspaces have identical bases."""

    __slots__ = ("field", "n", "basis", "_hash")

    def __init__(self, field: FieldCtx, n: int, vectors=()):
        vecs = field.asarray(vectors) if len(vectors) else field.zeros((0, n))
        if vecs.ndim != 2:
            vecs = vecs.reshape(-1, n)
        R, rank, _ = rref_array(field, vecs)
        self._set(field, n, R[:rank])

    @classmethod
    def _from_rref(cls, field, n, basis):
        s = object.__new__(cls)
        s._set(field, n, basis)
        return s

    def _set(self, field, n, basis):
        basis = np.array(basis, dtype=field.dtype, copy=True)
        if basis.ndim != 2:
            basis = basis.reshape(-1, n)
        basis.flags.writeable = False
        self.field = field
        self.n = n
        self.basis = basis
        self._hash = None

    @classmethod
    def zero(cls, field, n):
        return cls._from_rref(field, n, field.zeros((0, n)))

    @classmethod
    def full(cls, field, n):
        return cls._from_rref(field, n, field.eye(n))

    @classmethod
    def span(cls, field, n, vectors):
        return cls(field, n, vectors)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self):
        return tuple(int(np.nonzero(row != 0)[0][0]) for row in self.basis)

    def __len__(self):
        return self.dim

    def _check(self, other):
        if not isinstance(other, Subspace):
            raise TypeError("expected a Subspace")
        if other.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")
        if other.field is not self.field:
            raise ValueError("subspaces live over different fields")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.n, np.concatenate([self.basis, other.basis]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.n)
        # x B_V = y B_W  <=>  (x, -y) in ker [B_V^T | -B_W^T]
        stacked = np.concatenate([self.basis.T, F.neg(other.basis.T)], axis=1)
        ker = kernel_array(F, stacked)
        if ker.shape[0] == 0:
            return Subspace.zero(F, self.n)
        vecs = F.matmul(ker[:, : self.dim], self.basis)
        return Subspace(F, self.n, vecs)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n == other.n and self.field is other.field
                and self.basis.shape == other.basis.shape
                and bool(np.all(self.basis == other.basis)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.spec, self.n, tuple(self.basis.ravel().tolist())))
        return self._hash

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __ge__(self, other):
        return other <= self

    def contains(self, v) -> bool:
        F = self.field
        v = np.asarray(v, dtype=F.dtype)
        if self.dim == 0:
            return bool(np.all(v == 0))
        return rref_array(F, np.concatenate([self.basis, v[None, :]]))[1] == self.dim

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard pairing ``x^t y``."""
        if self.dim == 0:
            return Subspace.full(self.field, self.n)
        return Subspace._from_rref(self.field, self.n, kernel_array(self.field, self.basis))

    def image(self, m: Matrix) -> "Subspace":
        if self.dim == 0:
            return self
        return Subspace(self.field, m.rows, self.field.matmul(self.basis, m.a.T))

    def is_invariant(self, m: Matrix) -> bool:
        return self.image(m) <= self

    def to_field(self, big: FieldCtx) -> "Subspace":
        return Subspace._from_rref(big, self.n, self.field.embed(self.basis, big))

    def basis_matrix(self) -> Matrix:
        return Matrix._wrap(self.field, self.basis)

    def vectors(self):
        return [row.copy() for row in self.basis]

    def tolist(self):
        return [[self.field.fmt(x) for x in row] for row in self.basis.tolist()]

    def __repr__(self):
        return f"Subspace<{self.field.spec}>(n={self.n}, basis={self.basis.tolist()})"


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of ``d``-dimensional subspaces of ``F_q^n``."""
    if d < 0 or d > n:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field: FieldCtx, n: int, d: int, budget: int | None = None):
    """Yield every ``d``-dimensional subspace of ``field**n`` exactly once.

    Order: pivot sets in lexicographic order, then the free RREF entries as
    a mixed-radix counter over the field's canonical element order.
    """
    if not field.is_finite:
        raise ValueError("subspace enumeration needs a finite field")
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    q = field.order
    if budget is not None:
        total = gaussian_binomial(n, d, q)
        if total > budget:
            raise BudgetExceeded(total, budget, f"subspaces of dim {d} in F_{q}^{n}")
    return _enumerate(field, n, d)


def _enumerate(field, n, d):
    q = field.order
    elems = field.elements()
    for piv in combinations(range(n), d):
        pset = set(piv)
        free = [(i, j) for i, c in enumerate(piv) for j in range(c + 1, n) if j not in pset]
        base = field.zeros((d, n))
        for i, c in enumerate(piv):
            base[i, c] = field.one
        nfree = len(free)
        for code in range(q ** nfree):
            b = base.copy()
            for t in range(nfree - 1, -1, -1):
                code, digit = divmod(code, q)
                i, j = free[t]
                b[i, j] = elems[digit]
            yield Subspace._from_rref(field, n, b)
