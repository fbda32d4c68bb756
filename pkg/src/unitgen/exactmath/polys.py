"""Dense polynomials over GF(p) as coefficient lists, lowest degree first.

Only what field construction needs: multiplication, remainder, an
irreducibility test by trial division and the choice of modulus.
"""

from itertools import product


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def polymod(a, m, p):
    """Remainder of ``a`` modulo the nonzero polynomial ``m``."""
    a = trim([x % p for x in a])
    m = trim(m)
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = trim(a)
    return a


def monic_polys(p, d):
    """All monic polynomials of degree ``d``, in lexicographic order of
    their coefficients read from the highest non-leading degree down."""
    for coeffs in product(range(p), repeat=d):
        yield list(reversed(coeffs)) + [1]


def is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            if not polymod(f, g, p):
                return False
    return True


def lowest_irreducible(p, k):
    """First monic irreducible of degree ``k`` in :func:`monic_polys` order."""
    for f in monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {k} over F{p}")  # pragma: no cover
