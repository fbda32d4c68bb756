"""Dense exact linear algebra over a :class:`FieldCtx`.

The functions here work on raw ndarrays; :class:`Matrix` wraps them for
readable algebra in the rest of the package.
"""

from __future__ import annotations

import enum
import heapq
from itertools import permutations

import numpy as np

from .fields import FieldCtx

__all__ = [
    "Matrix", "rref", "rref_array", "kernel_array", "det_batch", "charpoly",
    "poly_roots", "sparse_nullspace", "SymmetryKind", "symmetry_kind",
]


def rref_array(F: FieldCtx, a: np.ndarray):
    """Reduced row echelon form of ``a``.

    Pivot = first nonzero entry scanning columns left to right, taking the
    topmost candidate row.  Returns ``(R, rank, pivots)`` with ``R`` the
    same shape as ``a``.
    """
    A = np.array(a, dtype=F.dtype, copy=True)
    m, c = A.shape
    r = 0
    pivots = []
    for col in range(c):
        if r == m:
            break
        nz = np.nonzero(A[r:, col] != 0)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul(A[r], F.inv(A[r, col]))
        others = np.nonzero(A[:, col] != 0)[0]
        others = others[others != r]
        if others.size:
            A[others] = F.sub(A[others], F.mul(A[others, col][:, None], A[r][None, :]))
        pivots.append(col)
        r += 1
    return A, r, tuple(pivots)


def kernel_array(F: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{x : a x = 0}``, already in RREF."""
    m, c = a.shape
    R, rank, pivots = rref_array(F, a)
    free = [j for j in range(c) if j not in set(pivots)]
    basis = F.zeros((len(free), c))
    for t, j in enumerate(free):
        basis[t, j] = F.one
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg(R[i, j])
    if len(free):
        basis = rref_array(F, basis)[0]
    return basis


def det_batch(F: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square matrices, shape ``(B, n, n)``."""
    A = np.array(mats, dtype=F.dtype, copy=True)
    B, n, _ = A.shape
    det = np.full(B, F.one, dtype=F.dtype) if F.dtype is not object else _obj_full(B, F.one)
    if n == 0 or B == 0:
        return det
    idx = np.arange(B)
    alive = np.ones(B, dtype=bool)
    for c in range(n):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = c + np.argmax(nz, axis=1)
        swap = (piv != c) & alive
        if swap.any():
            s = idx[swap]
            rc = A[s, c].copy()
            A[s, c] = A[s, piv[swap]]
            A[s, piv[swap]] = rc
            det[s] = F.neg(det[s])
        pv = A[:, c, c].copy()
        pv[~alive] = F.one
        det = F.mul(det, pv)
        if c + 1 < n:
            fac = F.mul(A[:, c + 1:, c], _inv_vec(F, pv)[:, None])
            A[:, c + 1:, :] = F.sub(A[:, c + 1:, :], F.mul(fac[:, :, None], A[:, c, None, :]))
    det[~alive] = F.zero
    return det


def _obj_full(size, value):
    out = np.empty(size, dtype=object)
    out.fill(value)
    return out


def _inv_vec(F: FieldCtx, x: np.ndarray) -> np.ndarray:
    if F.kind == "prime":
        return F.pow(x, F.p - 2)
    return F.inv(x)


def charpoly(F: FieldCtx, a: np.ndarray) -> list:
    """Coefficients of ``det(t I - a)``, lowest degree first (Berkowitz)."""
    n = a.shape[0]
    vec = [F.one]  # highest degree first
    for r in range(1, n + 1):
        sub = a[: r - 1, : r - 1]
        row = a[r - 1, : r - 1]
        col = a[: r - 1, r - 1]
        first = [F.one, F.neg(a[r - 1, r - 1])]
        cur = col
        for _ in range(r - 1):
            first.append(F.neg(F.dot(row, cur)))
            cur = F.matmul(sub, cur[:, None])[:, 0] if r > 1 else cur
        new = []
        for i in range(r + 1):
            acc = F.zero
            for j in range(min(i + 1, len(vec))):
                acc = F.add(acc, F.mul(first[i - j], vec[j]))
            new.append(acc)
        vec = new
    return list(reversed(vec))


def poly_roots(F: FieldCtx, coeffs) -> np.ndarray:
    """All roots in the finite field ``F`` (coefficients lowest degree first)."""
    xs = F.elements()
    val = F.zeros(xs.shape)
    for c in reversed(list(coeffs)):
        val = F.add(F.mul(val, xs), c)
    return xs[val == 0]


def sparse_nullspace(F: FieldCtx, rows, ncols: int) -> np.ndarray:
    """Null space of a sparse system given as an iterable of ``{col: coeff}``.

    Rows are folded one at a time into an echelon set keyed by leading
    column; the result is returned as an RREF basis array.
    """
    piv: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        heap = [c for c in row if c in piv]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if v is None or v == 0:
                continue
            for cc, w in piv[c].items():
                nv = F.sub(row.get(cc, F.zero), F.mul(v, w))
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
                    if cc in piv and cc not in seen:
                        seen.add(cc)
                        heapq.heappush(heap, cc)
        if not row:
            continue
        lead = min(row)
        inv = F.inv(row[lead])
        piv[lead] = {c: F.mul(v, inv) for c, v in row.items()}
    # back substitution to reduced form
    for lead in sorted(piv, reverse=True):
        r = piv[lead]
        for c in sorted(k for k in r if k != lead and k in piv):
            v = r.get(c)
            if v is None or v == 0:
                continue
            for cc, w in piv[c].items():
                nv = F.sub(r.get(cc, F.zero), F.mul(v, w))
                if nv == 0:
                    r.pop(cc, None)
                else:
                    r[cc] = nv
    free = [j for j in range(ncols) if j not in piv]
    basis = F.zeros((len(free), ncols))
    for t, j in enumerate(free):
        basis[t, j] = F.one
        for lead, r in piv.items():
            v = r.get(j)
            if v is not None and v != 0:
                basis[t, lead] = F.neg(v)
    return basis


class SymmetryKind(str, enum.Enum):
    SYMMETRIC = "symmetric-nonalternating"
    ALTERNATING = "alternating"
    NEITHER = "neither"


class Matrix:
    """An immutable matrix over a :class:`FieldCtx`."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldCtx, entries):
        a = field.asarray(entries)
        if a.ndim != 2:
            raise ValueError("a matrix needs a 2-d array of entries")
        a = np.array(a, copy=True)
        a.flags.writeable = False
        self.field = field
        self.a = a

    @classmethod
    def _wrap(cls, field, a):
        m = object.__new__(cls)
        a = np.ascontiguousarray(a)
        a.flags.writeable = False
        m.field = field
        m.a = a
        return m

    @classmethod
    def identity(cls, field, n):
        return cls._wrap(field, field.eye(n))

    @classmethod
    def zeros(cls, field, rows, cols=None):
        return cls._wrap(field, field.zeros((rows, rows if cols is None else cols)))

    @classmethod
    def unit(cls, field, n, i, j):
        """The matrix unit with a one at (i, j), 0-based."""
        a = field.zeros((n, n))
        a[i, j] = field.one
        return cls._wrap(field, a)

    @property
    def shape(self):
        return self.a.shape

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def _other(self, other):
        if isinstance(other, Matrix):
            if other.field is not self.field:
                raise ValueError(f"field mismatch: {self.field.spec} vs {other.field.spec}")
            return other.a
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Matrix._wrap(self.field, self.field.add(self.a, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Matrix._wrap(self.field, self.field.sub(self.a, b))

    def __neg__(self):
        return Matrix._wrap(self.field, self.field.neg(self.a))

    def __matmul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix._wrap(self.field, self.field.matmul(self.a, b))

    def scale(self, c):
        return Matrix._wrap(self.field, self.field.mul(self.a, self.field(c) if not
                                                       isinstance(c, np.generic) else c))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and bool(np.all(self.a == other.a)))

    def __hash__(self):
        return hash((self.field.spec, self.shape, tuple(self.a.ravel().tolist())))

    def __getitem__(self, idx):
        return self.a[idx]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.a.tolist())
        return f"Matrix<{self.field.spec}>[{body}]"

    def tolist(self):
        return [[self.field.fmt(x) for x in row] for row in self.a.tolist()]

    @property
    def T(self):
        return Matrix._wrap(self.field, self.a.T.copy())

    def is_zero(self):
        return bool(np.all(self.a == 0))

    def is_square(self):
        return self.rows == self.cols

    def trace(self):
        return self.field.sum(np.diagonal(self.a))

    def rref(self):
        R, rank, piv = rref_array(self.field, self.a)
        return Matrix._wrap(self.field, R), rank, piv

    def rank(self) -> int:
        return rref_array(self.field, self.a)[1]

    def kernel(self):
        from .subspace import Subspace
        return Subspace._from_rref(self.field, self.cols, kernel_array(self.field, self.a))

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        return det_batch(self.field, self.a[None])[0]

    def is_invertible(self) -> bool:
        return self.is_square() and self.det() != 0

    def inv(self):
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = np.concatenate([self.a, self.field.eye(n)], axis=1)
        R, _, piv = rref_array(self.field, aug)
        if piv[:n] != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._wrap(self.field, R[:, n:])

    def apply(self, v):
        return self.field.matmul(self.a, np.asarray(v)[:, None])[:, 0]

    def direct_sum(self, other: "Matrix"):
        F = self.field
        out = F.zeros((self.rows + other.rows, self.cols + other.cols))
        out[: self.rows, : self.cols] = self.a
        out[self.rows:, self.cols:] = other.a
        return Matrix._wrap(F, out)

    def kron(self, other: "Matrix"):
        F = self.field
        out = F.mul(self.a[:, None, :, None], other.a[None, :, None, :])
        return Matrix._wrap(F, out.reshape(self.rows * other.rows, self.cols * other.cols))

    def charpoly(self):
        return charpoly(self.field, self.a)

    def to_field(self, big: FieldCtx):
        return Matrix._wrap(big, self.field.embed(self.a, big))

    def vec(self) -> np.ndarray:
        """Row-major entry vector."""
        return self.a.ravel().copy()


def rref(m: Matrix):
    """``(R, rank, pivots)`` for a :class:`Matrix`."""
    return m.rref()


def symmetry_kind(p: Matrix) -> SymmetryKind:
    if not p.is_square():
        raise ValueError("symmetry kind needs a square matrix")
    F = p.field
    a = p.a
    if np.all(a.T == F.neg(a)) and np.all(np.diagonal(a) == 0):
        return SymmetryKind.ALTERNATING
    if np.all(a.T == a):
        return SymmetryKind.SYMMETRIC
    return SymmetryKind.NEITHER


def leibniz_det_batch(F: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Determinants by the permutation expansion; an independent check on
    :func:`det_batch` for small sizes."""
    B, n, _ = mats.shape
    total = F.zeros(B)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.full(B, F.one, dtype=F.dtype) if F.dtype is not object else _obj_full(B, F.one)
        for i in range(n):
            term = F.mul(term, mats[:, i, perm[i]])
        total = F.add(total, term) if sign > 0 else F.sub(total, term)
    return total
