"""Finite-dimensional unital algebras with involution, by structure constants.

An :class:`InvAlgebra` stores the product tensor sparsely, the involution
as a matrix acting on coordinate columns and the unit as a coordinate
vector.  Elements are plain coordinate arrays over the algebra's field.
Plain associative algebras are encoded with the identity involution.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exactmath import FieldCtx, Matrix, Subspace, parse_field, sparse_nullspace
from .exactmath.linalg import rref_array

__all__ = [
    "InvAlgebra", "AlgebraAxiomError", "SubalgebraSpan", "make_algebra", "load_algebra",
    "closure", "generates", "derivation_algebra", "DerivationAlgebra", "base_change",
    "is_automorphism",
]


class AlgebraAxiomError(ValueError):
    """An algebra description violates an axiom; ``witness`` names the basis indices."""

    def __init__(self, message, witness=()):
        super().__init__(f"{message} (basis indices {tuple(witness)})")
        self.witness = tuple(witness)


class InvAlgebra:
    """Associative unital algebra with involution over an exact field."""

    def __init__(self, field: FieldCtx, dim: int, product, involution, unit, validate=True):
        self.field = F = field
        self.dim = N = int(dim)
        quads = {}
        for i, j, k, c in product:
            i, j, k = int(i), int(j), int(k)
            if not (0 <= i < N and 0 <= j < N and 0 <= k < N):
                raise AlgebraAxiomError("structure constant index out of range", (i, j, k))
            c = F(c) if not isinstance(c, (np.integer,)) else F(int(c))
            key = (i, j, k)
            quads[key] = F.add(quads[key], c) if key in quads else c
        quads = {key: c for key, c in quads.items() if c != 0}
        keys = sorted(quads)
        self._I = np.array([t[0] for t in keys], dtype=np.int64)
        self._J = np.array([t[1] for t in keys], dtype=np.int64)
        self._K = np.array([t[2] for t in keys], dtype=np.int64)
        self._C = F.asarray([quads[t] for t in keys]) if keys else F.zeros(0)
        table: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j, k) in keys:
            table.setdefault((i, j), {})[k] = quads[(i, j, k)]
        self.table = table
        sigma = involution if isinstance(involution, Matrix) else Matrix(F, np.asarray(
            involution, dtype=object).reshape(N, N))
        if sigma.shape != (N, N) or sigma.field is not F:
            raise AlgebraAxiomError("involution must be an N x N matrix over the algebra field")
        self.sigma = sigma
        nz = np.nonzero(sigma.a != 0)
        self._sR, self._sC = nz[0].astype(np.int64), nz[1].astype(np.int64)
        self._sV = sigma.a[nz]
        self._scols = [{} for _ in range(N)]
        for r, c, v in zip(self._sR.tolist(), self._sC.tolist(), self._sV):
            self._scols[c][r] = v
        unit = F.asarray(unit).reshape(-1)
        if unit.shape != (N,):
            raise AlgebraAxiomError("unit must have length N")
        unit.flags.writeable = False
        self.unit = unit
        if validate:
            self.validate()

    # -- arithmetic -----------------------------------------------------
    def mul(self, x, y) -> np.ndarray:
        F = self.field
        if self._I.size == 0:
            return F.zeros(self.dim)
        terms = F.mul(F.mul(x[self._I], y[self._J]), self._C)
        return F.scatter_add(self.dim, self._K, terms)

    def star(self, x) -> np.ndarray:
        F = self.field
        return F.scatter_add(self.dim, self._sR, F.mul(np.asarray(x)[self._sC], self._sV))

    def add(self, x, y):
        return self.field.add(x, y)

    def scale(self, c, x):
        return self.field.mul(self.field(c) if not isinstance(c, np.generic) else c, x)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, coords) -> np.ndarray:
        v = self.field.asarray(coords).reshape(-1)
        if v.shape != (self.dim,):
            raise ValueError(f"element needs {self.dim} coordinates")
        return v

    def power(self, x, e: int):
        result = self.unit.copy()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _basis_product(self, i, j):
        return self.table.get((i, j), {})

    def _sparse_mul(self, x: dict, y: dict):
        F = self.field
        out: dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = F.mul(a, b)
                for m, c in self._basis_product(i, j).items():
                    out[m] = F.add(out.get(m, F.zero), F.mul(ab, c))
        return {m: v for m, v in out.items() if v != 0}

    def _sparse_star(self, x: dict):
        F = self.field
        out: dict[int, object] = {}
        for i, a in x.items():
            for m, c in self._scols[i].items():
                out[m] = F.add(out.get(m, F.zero), F.mul(a, c))
        return {m: v for m, v in out.items() if v != 0}

    def _sparse_times_basis(self, vec: dict, k: int, left: bool):
        F = self.field
        out: dict[int, object] = {}
        for l, c in vec.items():
            prod = self._basis_product(l, k) if left else self._basis_product(k, l)
            for m, d in prod.items():
                v = F.add(out.get(m, F.zero), F.mul(c, d))
                out[m] = v
        return {m: v for m, v in out.items() if v != 0}

    # -- validation -----------------------------------------------------
    def validate(self):
        """Check associativity, the unit and the involution axioms."""
        F, N = self.field, self.dim
        for i in range(N):
            for j in range(N):
                ij = self._basis_product(i, j)
                for k in range(N):
                    lhs = self._sparse_times_basis(ij, k, left=True)
                    jk = self._basis_product(j, k)
                    rhs = self._sparse_times_basis(jk, i, left=False)
                    if lhs != rhs:
                        raise AlgebraAxiomError("product is not associative", (i, j, k))
        for j in range(N):
            e = self.basis_vector(j)
            if not np.all(self.mul(self.unit, e) == e):
                raise AlgebraAxiomError("unit fails 1*x = x", (j,))
            if not np.all(self.mul(e, self.unit) == e):
                raise AlgebraAxiomError("unit fails x*1 = x", (j,))
        for j in range(N):
            if self._sparse_star(self._scols[j]) != {j: F.one}:
                raise AlgebraAxiomError("involution does not square to the identity", (j,))
        if not np.all(self.star(self.unit) == self.unit):
            raise AlgebraAxiomError("involution does not fix the unit")
        for i in range(N):
            for j in range(N):
                lhs = self._sparse_star(self._basis_product(i, j))
                rhs = self._sparse_mul(self._scols[j], self._scols[i])
                if lhs != rhs:
                    raise AlgebraAxiomError("involution is not an anti-automorphism", (i, j))

    # -- serialization ----------------------------------------------------
    def description(self) -> dict:
        F = self.field
        prod = [[int(i), int(j), int(k), F.fmt(c)] for i, j, k, c in
                zip(self._I, self._J, self._K, self._C)]
        return {
            "dim": self.dim,
            "field": F.spec,
            "product": prod,
            "involution": self.sigma.tolist(),
            "unit": [F.fmt(x) for x in self.unit],
        }

    def fingerprint(self) -> str:
        text = json.dumps(self.description(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def __repr__(self):
        return f"InvAlgebra(dim={self.dim}, field={self.field.spec})"


def _coeff(F: FieldCtx, c):
    if isinstance(c, str) and F.kind == "Q":
        return Fraction(c)
    return F(c)


def make_algebra(description: dict, validate=True) -> InvAlgebra:
    """Build and validate an algebra from the file-format dictionary."""
    F = parse_field(description["field"])
    N = int(description["dim"])
    product = [(i, j, k, _coeff(F, c)) for i, j, k, c in description["product"]]
    inv = description["involution"]
    inv = np.asarray([_coeff(F, c) for c in np.asarray(inv, dtype=object).ravel()],
                     dtype=object).reshape(N, N)
    unit = [_coeff(F, c) for c in description["unit"]]
    return InvAlgebra(F, N, product, Matrix(F, inv), unit, validate=validate)


def load_algebra(path) -> InvAlgebra:
    return make_algebra(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class SubalgebraSpan:
    """A subalgebra given by a canonical subspace of the algebra."""

    algebra: InvAlgebra
    space: Subspace
    closed: bool = dc_field(default=True)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other):
        if not isinstance(other, SubalgebraSpan):
            return NotImplemented
        return self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __le__(self, other: "SubalgebraSpan") -> bool:
        return self.space <= other.space

    def contains(self, x) -> bool:
        return self.space.contains(x)

    def is_closed(self) -> bool:
        """Re-verify: unit, products of basis pairs and involution images."""
        A = self.algebra
        if not self.contains(A.unit):
            return False
        basis = self.space.vectors()
        for x in basis:
            if not self.contains(A.star(x)):
                return False
            for y in basis:
                if not self.contains(A.mul(x, y)):
                    return False
        return True


class _Echelon:
    """Incrementally grown echelon basis (rows normalized at their pivot)."""

    def __init__(self, F: FieldCtx, n: int):
        self.F = F
        self.n = n
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        F = self.F
        v = np.array(v, dtype=F.dtype, copy=True)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = F.sub(v, F.mul(c, row))
        return v

    def insert(self, v) -> np.ndarray | None:
        v = self.reduce(v)
        nz = np.nonzero(v != 0)[0]
        if nz.size == 0:
            return None
        p = int(nz[0])
        v = self.F.mul(v, self.F.inv(v[p]))
        self.rows.append(v)
        self.pivots.append(p)
        return v

    @property
    def dim(self):
        return len(self.rows)

    def subspace(self) -> Subspace:
        if not self.rows:
            return Subspace.zero(self.F, self.n)
        R, rank, _ = rref_array(self.F, np.array(self.rows, dtype=self.F.dtype))
        return Subspace._from_rref(self.F, self.n, R[:rank])


def _as_elements(A: InvAlgebra, T):
    return [A.element(t) for t in T]


def _spin(A: InvAlgebra, gens, stop_at=None) -> _Echelon:
    """Span of all words in ``gens``: grow {1} under left multiplication."""
    ech = _Echelon(A.field, A.dim)
    queue = [ech.insert(A.unit)]
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        for g in gens:
            v = ech.insert(A.mul(g, w))
            if v is not None:
                queue.append(v)
                if stop_at is not None and ech.dim >= stop_at:
                    return ech
    return ech


def _rounds(A: InvAlgebra, T) -> _Echelon:
    """Seed {1} u T u T*, then add all pairwise products until stable."""
    ech = _Echelon(A.field, A.dim)
    ech.insert(A.unit)
    for t in T:
        ech.insert(t)
        ech.insert(A.star(t))
    while True:
        before = ech.dim
        current = list(ech.rows)
        current += [A.star(x) for x in current]
        for x in current:
            for y in current:
                ech.insert(A.mul(x, y))
        if ech.dim == before:
            return ech


def closure(A: InvAlgebra, T, method: str = "spin") -> SubalgebraSpan:
    """Smallest unital, involution-stable subalgebra containing ``T``.

    ``method="spin"`` grows the span of words in T and T* by left
    multiplication; ``method="rounds"`` closes under all pairwise products
    round by round.  Both give the same subspace.
    """
    T = _as_elements(A, T)
    if method == "spin":
        gens = T + [A.star(t) for t in T]
        ech = _spin(A, gens)
    elif method == "rounds":
        ech = _rounds(A, T)
    else:
        raise ValueError(f"unknown closure method {method!r}")
    return SubalgebraSpan(A, ech.subspace())


def closure_dim(A: InvAlgebra, T) -> int:
    T = _as_elements(A, T)
    return _spin(A, T + [A.star(t) for t in T]).dim


def generates(A: InvAlgebra, T) -> bool:
    T = _as_elements(A, T)
    return _spin(A, T + [A.star(t) for t in T], stop_at=A.dim).dim == A.dim


@dataclass
class DerivationAlgebra:
    dim: int
    basis: list
    informational: bool  # True outside characteristic 0


def derivation_algebra(A: InvAlgebra) -> DerivationAlgebra:
    """Linear maps D with D(xy) = D(x)y + xD(y), D sigma = sigma D and D(1) = 0.

    Unknown D[k, l] (coefficient of e_k in D(e_l)) sits in column k*N + l.
    """
    F, N = A.field, A.dim
    var = lambda k, l: k * N + l  # noqa: E731
    neg = F.neg

    def rows():
        for i in range(N):
            for j in range(N):
                eqs: dict[int, dict] = {}

                def bump(m, col, c):
                    row = eqs.setdefault(m, {})
                    row[col] = F.add(row.get(col, F.zero), c)

                for l, c in A._basis_product(i, j).items():
                    for m in range(N):
                        bump(m, var(m, l), c)
                for l in range(N):
                    for m, c in A._basis_product(l, j).items():
                        bump(m, var(l, i), neg(c))
                    for m, c in A._basis_product(i, l).items():
                        bump(m, var(l, j), neg(c))
                yield from eqs.values()
        s = A.sigma.a
        for a in range(N):
            for b in range(N):
                row: dict[int, object] = {}
                for k in range(N):
                    if s[a, k] != 0:
                        row[var(k, b)] = F.add(row.get(var(k, b), F.zero), s[a, k])
                    if s[k, b] != 0:
                        row[var(a, k)] = F.sub(row.get(var(a, k), F.zero), s[k, b])
                yield row
        for m in range(N):
            yield {var(m, l): A.unit[l] for l in range(N) if A.unit[l] != 0}

    basis = sparse_nullspace(F, rows(), N * N)
    mats = [Matrix(F, b.reshape(N, N)) for b in basis]
    return DerivationAlgebra(len(mats), mats, informational=F.characteristic != 0)


def base_change(A: InvAlgebra, big: FieldCtx, validate=False) -> InvAlgebra:
    """Reinterpret the structure constants over an extension field."""
    small = A.field
    if big is small:
        return A
    if small.characteristic != big.characteristic or not small.is_subfield_of(big):
        raise ValueError(f"{big.spec} is not an extension of {small.spec}")
    C = small.embed(A._C, big)
    product = list(zip(A._I.tolist(), A._J.tolist(), A._K.tolist(), list(C)))
    return InvAlgebra(big, A.dim, product, A.sigma.to_field(big), small.embed(A.unit, big),
                      validate=validate)


def is_automorphism(A: InvAlgebra, g: Matrix) -> bool:
    """Whether the linear map ``g`` (on coordinate columns) preserves product,
    involution and unit."""
    F, N = A.field, A.dim
    if g.shape != (N, N) or not g.is_invertible():
        return False
    if not np.all(g.apply(A.unit) == A.unit):
        return False
    if g @ A.sigma != A.sigma @ g:
        return False
    cols = [g.a[:, i] for i in range(N)]
    for i in range(N):
        for j in range(N):
            lhs = g.apply(A.mul(A.basis_vector(i), A.basis_vector(j)))
            if not np.all(lhs == A.mul(cols[i], cols[j])):
                return False
    return True
