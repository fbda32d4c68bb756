"""The algebra M_n x M_n with involution (a, b) -> (b^t, a^t).

Coordinates: the first factor's e_ij sits at index i*n + j, the second
factor's at n*n + i*n + j (0-based).  Matrices e, d, u follow the usual
1-based labels in their helper functions.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..exactmath import FieldCtx, Matrix, Subspace, SymmetryKind, symmetry_kind
from ..mualg import InvAlgebra, SubalgebraSpan

__all__ = [
    "UnitaryModel", "make_model", "matrix_algebra", "hermitian_algebra", "omega",
    "upper_shift", "unit_matrix", "sym_unit", "span_of", "stabilizer_space",
]


def upper_shift(F: FieldCtx, n: int) -> Matrix:
    """u = e_12 + e_23 + ... + e_{n-1,n}."""
    a = F.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = F.one
    return Matrix._wrap(F, a)


def unit_matrix(F: FieldCtx, n: int, i: int, j: int) -> Matrix:
    """e_ij with 1-based labels."""
    return Matrix.unit(F, n, i - 1, j - 1)


def sym_unit(F: FieldCtx, n: int, i: int, j: int) -> Matrix:
    """d_ij = e_ii when i == j, else e_ij + e_ji (1-based)."""
    if i == j:
        return unit_matrix(F, n, i, i)
    return unit_matrix(F, n, i, j) + unit_matrix(F, n, j, i)


def omega(F: FieldCtx, n: int) -> Matrix:
    """I_{n/2} kron [[0, -1], [1, 0]]."""
    if n % 2:
        raise ValueError("the alternating matrix Omega needs even n")
    block = Matrix(F, [[0, -1], [1, 0]])
    return Matrix.identity(F, n // 2).kron(block)


def _matmul_product(n: int, offset: int = 0):
    for i in range(n):
        for j in range(n):
            for l in range(n):
                yield (offset + i * n + j, offset + j * n + l, offset + i * n + l, 1)


class UnitaryModel:
    """(A_n, *) over a field, with its distinguished matrices."""

    def __init__(self, n: int, field: FieldCtx, validate=True):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.field = F = field
        m = n * n
        N = 2 * m
        product = list(_matmul_product(n)) + list(_matmul_product(n, m))
        sigma = F.zeros((N, N))
        for i in range(n):
            for j in range(n):
                sigma[m + j * n + i, i * n + j] = F.one
                sigma[j * n + i, m + i * n + j] = F.one
        unit = np.concatenate([F.eye(n).ravel(), F.eye(n).ravel()])
        self.algebra = InvAlgebra(F, N, product, Matrix._wrap(F, sigma), unit, validate=validate)
        self.u = upper_shift(F, n)
        self.I = Matrix.identity(F, n)
        self.Omega = omega(F, n) if n % 2 == 0 else None

    @property
    def dim(self):
        return self.algebra.dim

    def e(self, i, j) -> Matrix:
        return unit_matrix(self.field, self.n, i, j)

    def d(self, i, j) -> Matrix:
        return sym_unit(self.field, self.n, i, j)

    def matrix(self, entries) -> Matrix:
        return Matrix(self.field, entries)

    # -- elements -----------------------------------------------------------
    def pair(self, a, b) -> np.ndarray:
        """Coordinates of (a, b)."""
        a = a if isinstance(a, Matrix) else self.matrix(a)
        b = b if isinstance(b, Matrix) else self.matrix(b)
        return np.concatenate([a.a.ravel(), b.a.ravel()]).astype(self.field.dtype)

    def split(self, x) -> tuple[Matrix, Matrix]:
        n, m = self.n, self.n * self.n
        x = np.asarray(x)
        return (Matrix._wrap(self.field, x[:m].reshape(n, n).copy()),
                Matrix._wrap(self.field, x[m:].reshape(n, n).copy()))

    def star(self, x):
        a, b = self.split(x)
        return self.pair(b.T, a.T)

    # -- subalgebras --------------------------------------------------------
    def subalg_AV(self, V: Subspace) -> SubalgebraSpan:
        """S_V x S_{V-perp}: pairs with a V in V and b V-perp in V-perp."""
        self._own(V)
        if V.dim in (0, self.n):
            raise ValueError("A_V needs a nontrivial proper subspace V")
        W = V.perp()
        S_V = stabilizer_space(V)
        S_W = stabilizer_space(W)
        m = self.n * self.n
        F = self.field
        vecs = [np.concatenate([s, F.zeros(m)]) for s in S_V.vectors()]
        vecs += [np.concatenate([F.zeros(m), s]) for s in S_W.vectors()]
        return SubalgebraSpan(self.algebra, Subspace(F, self.dim, vecs))

    def subalg_Bp(self, p: Matrix) -> SubalgebraSpan:
        """The graph {(a, p a p^-1)}; p must be symmetric or alternating."""
        if p.field is not self.field or p.shape != (self.n, self.n):
            raise ValueError("p must be an n x n matrix over the model field")
        if not p.is_invertible():
            raise ValueError("B_[p] needs an invertible p")
        if symmetry_kind(p) is SymmetryKind.NEITHER:
            raise ValueError("B_[p] needs p symmetric or alternating")
        pinv = p.inv()
        n = self.n
        vecs = [self.pair(self.e(i, j), p @ self.e(i, j) @ pinv)
                for i in range(1, n + 1) for j in range(1, n + 1)]
        return SubalgebraSpan(self.algebra, Subspace(self.field, self.dim, vecs))

    def _own(self, V: Subspace):
        if V.n != self.n or V.field is not self.field:
            raise ValueError("subspace must live in the model's K^n")

    # -- automorphisms ------------------------------------------------------
    def act(self, c: Matrix, x):
        """[c](a, b) = (c a c^-1, c^-t b c^t)."""
        cinv = c.inv()
        a, b = self.split(x)
        return self.pair(c @ a @ cinv, cinv.T @ b @ c.T)

    def act_swap(self, x):
        a, b = self.split(x)
        return self.pair(b, a)

    def act_matrix(self, c: Matrix | None = None, swap=False) -> Matrix:
        """The automorphism as a matrix on coordinates."""
        F = self.field
        cols = []
        for k in range(self.dim):
            x = self.algebra.basis_vector(k)
            if c is not None:
                x = self.act(c, x)
            if swap:
                x = self.act_swap(x)
            cols.append(x)
        return Matrix._wrap(F, np.array(cols, dtype=F.dtype).T.copy())

    def act_span(self, c: Matrix, S: SubalgebraSpan) -> SubalgebraSpan:
        vecs = [self.act(c, v) for v in S.space.vectors()]
        return SubalgebraSpan(self.algebra, Subspace(self.field, self.dim, vecs))

    def first_components(self, S: SubalgebraSpan) -> Subspace:
        m = self.n * self.n
        return Subspace(self.field, m, [v[:m] for v in S.space.vectors()])

    def __repr__(self):
        return f"UnitaryModel(n={self.n}, field={self.field.spec})"


@lru_cache(maxsize=64)
def make_model(n: int, field: FieldCtx) -> UnitaryModel:
    return UnitaryModel(n, field)


def stabilizer_space(V: Subspace) -> Subspace:
    """S_V = {a : a V in V} as a subspace of row-major n x n matrices.

    a V in V iff y^t a v = 0 for v in V and y in V-perp.
    """
    F, n = V.field, V.n
    W = V.perp()
    rows = [np.outer(y, v).ravel() if F.kind == "Q" else F.mul(y[:, None], v[None, :]).ravel()
            for y in W.vectors() for v in V.vectors()]
    if not rows:
        return Subspace.full(F, n * n)
    return Subspace(F, n * n, rows).perp()


def span_of(F: FieldCtx, N: int, vectors) -> Subspace:
    return Subspace(F, N, list(vectors))


@lru_cache(maxsize=64)
def matrix_algebra(n: int, field: FieldCtx, g: Matrix | None = None) -> InvAlgebra:
    """M_n with the adjoint involution a -> g^-1 a^t g (transpose when g is None).

    Needs g^t = +-g so that the map squares to the identity.
    """
    F = field
    m = n * n
    product = list(_matmul_product(n))
    if g is None:
        g = Matrix.identity(F, n)
    ginv = g.inv()
    cols = []
    for i in range(n):
        for j in range(n):
            img = ginv @ Matrix.unit(F, n, j, i) @ g
            cols.append(img.a.ravel())
    sigma = Matrix._wrap(F, np.array(cols, dtype=F.dtype).T.copy())
    return InvAlgebra(F, m, product, sigma, F.eye(n).ravel())


@lru_cache(maxsize=16)
def hermitian_algebra(n: int, q: int) -> InvAlgebra:
    """M_n(F_{q^2}) with a -> conj(a)^t, viewed as an F_q-algebra of dimension 2n^2.

    F_{q^2} = F_q(theta); coordinate t*n^2 + i*n + j stands for theta^t e_ij.
    Only prime q is supported.
    """
    from ..exactmath import GF

    small = GF(q)
    if small.k != 1:
        raise ValueError("the Hermitian model is built for prime q only")
    big = GF(q, 2)
    theta = q  # code of the class of x, digits (0, 1)
    powers = [big.one, theta, big.mul(theta, theta)]
    conj = [big.one, big.frobenius(theta)]

    def digits(x):
        return [int(c) for c in big._digits[x]]

    m = n * n
    product = []
    for s in range(2):
        for t in range(2):
            coeffs = digits(powers[s + t])
            for i in range(n):
                for j in range(n):
                    for l in range(n):
                        for w, c in enumerate(coeffs):
                            if c:
                                product.append((s * m + i * n + j, t * m + j * n + l,
                                                w * m + i * n + l, c))
    sigma = small.zeros((2 * m, 2 * m))
    for t in range(2):
        coeffs = digits(conj[t])
        for i in range(n):
            for j in range(n):
                for w, c in enumerate(coeffs):
                    if c:
                        sigma[w * m + j * n + i, t * m + i * n + j] = c
    unit = np.concatenate([small.eye(n).ravel(), small.zeros(m)])
    return InvAlgebra(small, 2 * m, product, Matrix._wrap(small, sigma), unit)
