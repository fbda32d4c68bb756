"""Exact fields, matrices and subspaces."""

from .fields import GF, FieldCtx, FieldError, Q, field_of_order, parse_field
from .linalg import (
    Matrix, SymmetryKind, charpoly, det_batch, kernel_array, poly_roots, rref,
    rref_array, sparse_nullspace, symmetry_kind,
)
from .subspace import BudgetExceeded, Subspace, enumerate_subspaces, gaussian_binomial


def kernel(m: Matrix) -> Subspace:
    """``{x : m x = 0}`` as a canonical subspace."""
    return m.kernel()


def perp(v: Subspace) -> Subspace:
    return v.perp()


__all__ = [
    "GF", "FieldCtx", "FieldError", "Q", "field_of_order", "parse_field",
    "Matrix", "SymmetryKind", "charpoly", "det_batch", "kernel_array", "poly_roots",
    "rref", "rref_array", "sparse_nullspace", "symmetry_kind", "kernel", "perp",
    "BudgetExceeded", "Subspace", "enumerate_subspaces", "gaussian_binomial",
]
