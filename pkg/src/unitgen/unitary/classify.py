"""Certificates for tuples that fail to generate (A_n, *).

A non-generating tuple lies in a proper subalgebra, and every proper
subalgebra sits inside some A_V (V a nontrivial subspace, possibly defined
only over an extension field) or some graph algebra B_[p] with p symmetric
or alternating.  The functions here find such V and p explicitly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from ..exactmath import (
    BudgetExceeded, FieldCtx, Matrix, Subspace, SymmetryKind, charpoly, det_batch,
    enumerate_subspaces, gaussian_binomial, kernel_array, poly_roots, symmetry_kind,
)
from ..mualg import closure
from .model import UnitaryModel

__all__ = [
    "Generates", "InvariantSubspace", "Conjugator", "TheoryViolation", "classify",
    "find_invariant_subspace", "common_eigenspaces", "conjugator_space", "find_invertible",
    "check_witness", "witness_classes", "serialize_tuple",
]

SUBSPACE_BUDGET = 50_000
SEARCH_BUDGET = 2_000_000


@dataclass(frozen=True)
class Generates:
    def to_dict(self):
        return {"type": "generates"}


@dataclass(frozen=True)
class InvariantSubspace:
    V: Subspace
    degree: int

    @property
    def dim(self):
        return self.V.dim

    def to_dict(self):
        return {"type": "invariant-subspace", "dim": self.V.dim, "degree": self.degree,
                "field": self.V.field.spec, "basis": self.V.tolist()}


@dataclass(frozen=True)
class Conjugator:
    p: Matrix
    kind: SymmetryKind
    degree: int = 1

    def to_dict(self):
        return {"type": "conjugator", "kind": self.kind.value, "degree": self.degree,
                "field": self.p.field.spec, "p": self.p.tolist()}


class TheoryViolation(RuntimeError):
    """A non-generating tuple without any certificate, or a certificate
    that contradicts the structure theory."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}

    def serialize(self) -> str:
        return json.dumps({"error": "theory-violation", "message": str(self), **self.payload},
                          sort_keys=True)


def serialize_tuple(model: UnitaryModel, pairs) -> dict:
    return {"n": model.n, "field": model.field.spec,
            "pairs": [[a.tolist(), b.tolist()] for a, b in pairs]}


def _pairs(model: UnitaryModel, T):
    out = []
    for t in T:
        if isinstance(t, (tuple, list)) and len(t) == 2 and isinstance(t[0], Matrix):
            out.append((t[0], t[1]))
        else:
            out.append(model.split(t))
    return out


def _module_gens(pairs):
    """First components of the tuple and of its involution images."""
    return [a for a, _ in pairs] + [b.T for _, b in pairs]


def _is_invariant(gens, V: Subspace) -> bool:
    return all(V.is_invariant(g) for g in gens)


def common_eigenspaces(gens, E: FieldCtx) -> list[Subspace]:
    """Nonzero subspaces of common eigenvectors (one per eigenvalue tuple) over E."""
    n = gens[0].rows if gens else 0
    spaces = [Subspace.full(E, n)]
    for g in gens:
        roots = poly_roots(E, charpoly(E, g.a))
        new = []
        for lam in roots:
            shifted = g - Matrix.identity(E, n).scale(lam)
            K = shifted.kernel()
            for S in spaces:
                I = S & K
                if I.dim:
                    new.append(I)
        spaces = new
        if not spaces:
            break
    return spaces


def _first_line(spaces) -> Subspace | None:
    best = None
    for S in spaces:
        line = Subspace._from_rref(S.field, S.n, S.basis[:1])
        key = (line.pivots[0], tuple(int(x) for x in line.basis[0]) if S.field.kind != "Q" else ())
        if best is None or key < best[0]:
            best = (key, line)
    return None if best is None else best[1]


def _eigen_invariant(gens, i: int, E: FieldCtx) -> Subspace | None:
    n = gens[0].rows
    if i == 1:
        return _first_line(common_eigenspaces(gens, E))
    if i == n - 1:
        line = _first_line(common_eigenspaces([g.T for g in gens], E))
        return None if line is None else line.perp()
    raise ValueError("the eigenvector method only handles lines and hyperplanes")


def find_invariant_subspace(gens, i: int, E: FieldCtx, method: str = "auto",
                            budget: int = SUBSPACE_BUDGET) -> Subspace | None:
    """A dimension-i subspace of E^n stable under every matrix in ``gens``.

    ``exhaustive`` returns the first one in enumeration order; ``eigen``
    intersects eigenspaces (lines and hyperplanes only); ``auto`` uses the
    enumeration when it fits the budget.
    """
    n = gens[0].rows
    count = gaussian_binomial(n, i, E.order)
    if method == "auto":
        method = "exhaustive" if count <= budget or i not in (1, n - 1) else "eigen"
    if method == "eigen":
        return _eigen_invariant(gens, i, E)
    for V in enumerate_subspaces(E, n, i, budget=budget):
        if _is_invariant(gens, V):
            return V
    return None


def _over(E: FieldCtx, gens):
    return [g.to_field(E) if g.field is not E else g for g in gens]


# -- conjugators ------------------------------------------------------------

def conjugator_space(pairs, F: FieldCtx, kind: str | None = None) -> np.ndarray:
    """Basis (rows, row-major n x n) of {p : p a_i = b_i p}, optionally
    intersected with symmetric (``kind="sym"``) or alternating matrices."""
    n = pairs[0][0].rows
    eye = Matrix.identity(F, n)
    blocks = []
    for a, b in pairs:
        blocks.append((eye.kron(a.T) - b.kron(eye)).a)
    rows = list(np.concatenate(blocks)) if blocks else []
    for j in range(n):
        for k in range(j, n):
            if kind == "sym" and j != k:
                r = F.zeros(n * n)
                r[j * n + k] = F.one
                r[k * n + j] = F.neg(F.one)
                rows.append(r)
            elif kind == "alt":
                r = F.zeros(n * n)
                r[j * n + k] = F.one
                if j != k:
                    r[k * n + j] = F.add(r[k * n + j], F.one)
                rows.append(r)
    if not rows:
        return F.eye(n * n)
    return kernel_array(F, np.array(rows, dtype=F.dtype))


def find_invertible(basis: np.ndarray, n: int, F: FieldCtx, values=None, nonalternating=False,
                    budget: int = SEARCH_BUDGET, batch: int = 4096) -> Matrix | None:
    """First invertible combination of the basis matrices, coefficients from
    ``values`` (default: the whole field) in mixed-radix order."""
    m = basis.shape[0]
    if m == 0:
        return None
    vals = F.elements() if values is None else np.asarray(values, dtype=F.dtype)
    count = len(vals) ** m
    if count > budget:
        raise BudgetExceeded(count, budget, "conjugator search")
    B = basis.reshape(m, n * n)
    codes = itertools.product(range(len(vals)), repeat=m)
    while True:
        chunk = list(itertools.islice(codes, batch))
        if not chunk:
            return None
        coeff = vals[np.array(chunk, dtype=np.int64)]
        mats = F.sum(F.mul(coeff[:, :, None], B[None, :, :]), axis=1).reshape(-1, n, n)
        good = det_batch(F, mats) != 0
        if nonalternating:
            good &= np.any(np.diagonal(mats, axis1=1, axis2=2) != 0, axis=1)
        hit = np.nonzero(good)[0]
        if hit.size:
            return Matrix(F, mats[hit[0]])


def _find_conjugator(pairs, F: FieldCtx, want: str, budget=SEARCH_BUDGET) -> Conjugator | None:
    """Invertible p with p a_i p^-1 = b_i of the wanted kind, over F or the
    smallest extension large enough that a grid search is conclusive.

    A nonzero polynomial of degree D has a non-root on any grid S^m with
    |S| > D; det has degree n and det * p_tt degree n + 1.
    """
    n = pairs[0][0].rows
    char2 = F.characteristic == 2
    if want == "alt" and n % 2:
        return None
    basis = conjugator_space(pairs, F, "sym" if want == "sym" else "alt")
    if basis.shape[0] == 0:
        return None
    nonalt = want == "sym" and char2
    deg = n + 1 if nonalt else n
    p = find_invertible(basis, n, F, nonalternating=nonalt, budget=budget)
    degree = 1
    if p is None and F.order <= deg:
        k = 2
        while F.order ** k <= deg:
            k += 1
        E = F.extension(k)
        grid = E.elements()[: deg + 1]
        p = find_invertible(F.embed(basis, E), n, E, values=grid, nonalternating=nonalt,
                            budget=budget)
        degree = k
    if p is None:
        return None
    kind = symmetry_kind(p)
    expect = SymmetryKind.SYMMETRIC if want == "sym" else SymmetryKind.ALTERNATING
    if kind is not expect:
        raise TheoryViolation(f"conjugator search returned kind {kind.value}")
    return Conjugator(p, kind, degree)


# -- classification -----------------------------------------------------------

def classify(model: UnitaryModel, T, all_witnesses: bool = False, max_ext: int | None = None,
             budget: int = SUBSPACE_BUDGET) -> list:
    """Witnesses for the tuple T (elements of A_n or (a, b) matrix pairs).

    Default: [Generates()] or the first certificate found (invariant
    subspaces by increasing extension degree, then dimension; otherwise the
    conjugator forced by a graph algebra).  With ``all_witnesses`` every
    component containing a non-generating tuple gets a certificate.
    """
    F, n = model.field, model.n
    if not F.is_finite:
        raise ValueError("classify needs a finite field")
    pairs = _pairs(model, T)
    elems = [model.pair(a, b) for a, b in pairs]
    B = closure(model.algebra, elems)
    if B.dim == model.dim:
        return [Generates()]
    max_ext = n if max_ext is None else max_ext
    gens = _module_gens(pairs)
    payload = {"tuple": serialize_tuple(model, pairs)}
    if all_witnesses:
        found = _all_witnesses(pairs, gens, F, n, max_ext, budget)
        if not found:
            raise TheoryViolation("non-generating tuple without any witness", payload)
        return found
    P1 = model.first_components(B)
    if P1.dim < n * n:
        if n == 1:
            raise TheoryViolation("proper first projection for n = 1", payload)
        for k in range(1, max_ext + 1):
            E = F.extension(k) if k > 1 else F
            gE = _over(E, gens)
            for i in range(1, n):
                V = find_invariant_subspace(gE, i, E, budget=budget)
                if V is not None:
                    w = InvariantSubspace(V, k)
                    if not check_witness(pairs, w):
                        raise TheoryViolation("invariant subspace fails the second components",
                                              payload)
                    return [w]
        raise TheoryViolation(f"no invariant subspace up to degree {max_ext}", payload)
    # the first projection is onto, so B is the graph of an automorphism of M_n
    if B.dim != n * n:
        raise TheoryViolation(f"surjective first projection but dim B = {B.dim}", payload)
    m = n * n
    rows = []
    eye = Matrix.identity(F, n)
    for v in B.space.vectors():
        x = Matrix._wrap(F, v[:m].reshape(n, n))
        y = Matrix._wrap(F, v[m:].reshape(n, n))
        rows.extend((eye.kron(x.T) - y.kron(eye)).a)
    sol = kernel_array(F, np.array(rows, dtype=F.dtype))
    if sol.shape[0] != 1:
        raise TheoryViolation(f"conjugator space has dimension {sol.shape[0]}, expected 1", payload)
    p = Matrix._wrap(F, sol[0].reshape(n, n).copy())
    if not p.is_invertible():
        raise TheoryViolation("the conjugator is singular", payload)
    kind = symmetry_kind(p)
    if kind is SymmetryKind.NEITHER:
        raise TheoryViolation("the conjugator is neither symmetric nor alternating", payload)
    return [Conjugator(p, kind, 1)]


def _all_witnesses(pairs, gens, F, n, max_ext, budget):
    found = []
    for i in range(1, n):
        for k in range(1, max_ext + 1):
            E = F.extension(k) if k > 1 else F
            method = "eigen" if i in (1, n - 1) else "exhaustive"
            V = find_invariant_subspace(_over(E, gens), i, E, method=method, budget=budget)
            if V is not None:
                found.append(InvariantSubspace(V, k))
                break
    for want in ("sym", "alt"):
        c = _find_conjugator(pairs, F, want)
        if c is not None:
            found.append(c)
    return found


def check_witness(pairs, w) -> bool:
    """Re-verify a certificate against the tuple."""
    if isinstance(w, Generates):
        return True
    if isinstance(w, InvariantSubspace):
        E = w.V.field
        if not 0 < w.V.dim < w.V.n:
            return False
        W = w.V.perp()
        for a, b in pairs:
            if not w.V.is_invariant(a.to_field(E)) or not W.is_invariant(b.to_field(E)):
                return False
        return True
    if isinstance(w, Conjugator):
        E = w.p.field
        if not w.p.is_invertible() or symmetry_kind(w.p) is not w.kind:
            return False
        if w.kind is SymmetryKind.NEITHER:
            return False
        pinv = w.p.inv()
        return all(w.p @ a.to_field(E) @ pinv == b.to_field(E) for a, b in pairs)
    return False


def witness_classes(witnesses) -> set[str]:
    """Census labels: X{i}_rational / X{i}_geometric, Y, Yprime."""
    labels = set()
    for w in witnesses:
        if isinstance(w, InvariantSubspace):
            labels.add(f"X{w.dim}_{'rational' if w.degree == 1 else 'geometric'}")
        elif isinstance(w, Conjugator):
            labels.add("Y" if w.kind is SymmetryKind.SYMMETRIC else "Yprime")
    return labels
