"""Matrix identities behind the generator constructions and the component lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactmath import FieldCtx, Matrix
from .model import omega, sym_unit, unit_matrix, upper_shift

__all__ = ["IdentityReport", "identity_suite", "containment_identity", "nonclosed_witness",
           "shift_unit_expected"]


@dataclass
class IdentityReport:
    n: int
    field: str
    checked: dict = dc_field(default_factory=lambda: {"shift": 0, "odd_power": 0, "flip": 0})
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def shift_unit_expected(F: FieldCtx, n: int, i: int, j: int, k: int, l: int) -> Matrix:
    """Closed form of u^k e_ij u^l (1-based): e_{i-k, j+l} when k < i and l <= n-j."""
    if k < i and l <= n - j:
        return unit_matrix(F, n, i - k, j + l)
    return Matrix.zeros(F, n)


def identity_suite(n: int, F: FieldCtx, max_power: int | None = None) -> IdentityReport:
    """Evaluate the three shift / symmetric-unit identities on every index.

    (i)   u^k e_ij u^l against :func:`shift_unit_expected`, 0 <= k, l <= 2n;
    (ii)  d_ij^l = d_ij for odd l <= 2n;
    (iii) d_ij u^(j-i) d_ij u^(j-i) d_ij = e_ji for i < j.
    """
    if n < 2:
        raise ValueError("the identity suite needs n >= 2")
    top = 2 * n if max_power is None else max_power
    rep = IdentityReport(n, F.spec)
    u = upper_shift(F, n)
    upow = [Matrix.identity(F, n)]
    for _ in range(top):
        upow.append(upow[-1] @ u)
    stack = np.stack([m.a for m in upow])  # (top+1, n, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = unit_matrix(F, n, i, j)
            left = F.matmul(stack, e.a)  # u^k e_ij for every k
            prods = F.matmul(left[:, None], stack[None, :])  # [k, l] -> u^k e_ij u^l
            for k in range(top + 1):
                for l in range(top + 1):
                    rep.checked["shift"] += 1
                    if not np.array_equal(prods[k, l], shift_unit_expected(F, n, i, j, k, l).a):
                        rep.failures.append(("shift", i, j, k, l))
            d = sym_unit(F, n, i, j)
            power = d
            for l in range(1, top + 1):
                if l > 1:
                    power = power @ d
                if l % 2:
                    rep.checked["odd_power"] += 1
                    if power != d:
                        rep.failures.append(("odd_power", i, j, l))
            if i < j:
                s = upow[j - i]
                rep.checked["flip"] += 1
                if d @ s @ d @ s @ d != unit_matrix(F, n, j, i):
                    rep.failures.append(("flip", i, j))
    return rep


def containment_identity(a: Matrix) -> tuple[bool, Matrix | None]:
    """For a graph element (a, Omega a Omega^-1): with gamma = -tr(a)/n the
    matrix p = Omega (a + gamma I) should be symmetric and satisfy
    p a p^-1 = Omega a Omega^-1.  Returns (holds, p); p is None when the
    shifted matrix is singular and the identity does not apply.
    """
    F = a.field
    n = a.rows
    W = omega(F, n)
    gamma = F.neg(F.div(a.trace(), F(n)))
    shifted = a + Matrix.identity(F, n).scale(gamma)
    if not shifted.is_invertible():
        return True, None
    p = W @ shifted
    ok = p.T == p and p @ a @ p.inv() == W @ a @ W.inv()
    return ok, p


def nonclosed_witness(F: FieldCtx, n: int, alpha) -> tuple[Matrix, Matrix, Matrix]:
    """a = [[alpha, 1], [0, 1]], b = diag(1, alpha), p = [[0, alpha-1], [alpha-1, 1]],
    each padded by an identity block to size n.  p a p^-1 = b for alpha != 1."""
    if n < 2:
        raise ValueError("needs n >= 2")
    alpha = F(alpha)
    am1 = F.sub(alpha, F.one)
    pad = Matrix.identity(F, n - 2) if n > 2 else None

    def block(rows):
        m = Matrix(F, np.array(rows, dtype=object))
        return m.direct_sum(pad) if pad is not None else m

    a = block([[alpha, F.one], [F.zero, F.one]])
    b = block([[F.one, F.zero], [F.zero, alpha]])
    p = block([[F.zero, am1], [am1, F.one]])
    return a, b, p
