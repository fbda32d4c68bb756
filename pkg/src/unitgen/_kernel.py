"""Compiled closure-dimension kernel for the census hot path.

Elements of M_n x M_n are int64 arrays of shape (2, n, n) holding field
element codes.  Prime fields use modular arithmetic; prime powers use
addition / multiplication tables indexed by code.
"""

import numpy as np
from numba import njit

from .exactmath import FieldCtx


class FieldTables:
    """What the kernel needs to know about a finite field."""

    def __init__(self, F: FieldCtx):
        if not F.is_finite:
            raise ValueError("the census kernel needs a finite field")
        self.q = F.order
        self.p = F.characteristic
        self.tab = F.k > 1
        if self.tab:
            e = F.elements()
            self.addt = F.add(e[:, None], e[None, :]).astype(np.int64)
            self.mult = F.mul(e[:, None], e[None, :]).astype(np.int64)
            self.negt = F.neg(e).astype(np.int64)
            inv = np.zeros(self.q, dtype=np.int64)
            inv[1:] = F.inv(e[1:])
            self.invt = inv
        else:
            if self.p >= 1 << 31:
                raise ValueError("the census kernel supports primes below 2^31")
            self.addt = self.mult = np.zeros((1, 1), dtype=np.int64)
            self.negt = self.invt = np.zeros(1, dtype=np.int64)

    def args(self):
        return (self.p, self.tab, self.addt, self.mult, self.negt, self.invt)


@njit(cache=True)
def _add(x, y, p, tab, addt):
    if tab:
        return addt[x, y]
    s = x + y
    return s - p if s >= p else s


@njit(cache=True)
def _mul(x, y, p, tab, mult):
    if tab:
        return mult[x, y]
    return (x * y) % p


@njit(cache=True)
def _neg(x, p, tab, negt):
    if tab:
        return negt[x]
    return 0 if x == 0 else p - x


@njit(cache=True)
def _inv(x, p, tab, invt):
    if tab:
        return invt[x]
    result = 1
    base = x % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit(cache=True)
def closure_dim(gens, n, p, tab, addt, mult, negt, invt, stop_at_full):
    """Dimension of the span of all words in ``gens`` (shape (G, 2, n, n)).

    With the involution images included among the generators this is the
    generated *-subalgebra of M_n x M_n.
    """
    N = 2 * n * n
    rows = np.zeros((N, N), dtype=np.int64)
    pivs = np.zeros(N, dtype=np.int64)
    v = np.zeros(N, dtype=np.int64)
    for i in range(n):
        v[i * n + i] = 1
        v[n * n + i * n + i] = 1
    rows[0, :] = v
    pivs[0] = 0
    dim = 1
    head = 0
    G = gens.shape[0]
    while head < dim:
        w = rows[head]
        head += 1
        for g in range(G):
            # v = g * w, factor by factor
            for f in range(2):
                off = f * n * n
                for i in range(n):
                    for j in range(n):
                        acc = 0
                        for k in range(n):
                            a = gens[g, f, i, k]
                            b = w[off + k * n + j]
                            if a != 0 and b != 0:
                                acc = _add(acc, _mul(a, b, p, tab, mult), p, tab, addt)
                        v[off + i * n + j] = acc
            for t in range(dim):
                c = v[pivs[t]]
                if c != 0:
                    nc = _neg(c, p, tab, negt)
                    for j in range(N):
                        x = rows[t, j]
                        if x != 0:
                            v[j] = _add(v[j], _mul(nc, x, p, tab, mult), p, tab, addt)
            lead = -1
            for j in range(N):
                if v[j] != 0:
                    lead = j
                    break
            if lead < 0:
                continue
            s = _inv(v[lead], p, tab, invt)
            for j in range(N):
                rows[dim, j] = _mul(v[j], s, p, tab, mult)
            pivs[dim] = lead
            dim += 1
            if stop_at_full and dim == N:
                return N
    return dim


@njit(cache=True)
def _load_tuple(digits, r, n, gens):
    """Fill gens with x_t = (a_t, b_t) and their images (b_t^T, a_t^T)."""
    m = n * n
    for t in range(r):
        base = t * 2 * m
        for i in range(n):
            for j in range(n):
                a = digits[base + i * n + j]
                b = digits[base + m + i * n + j]
                gens[2 * t, 0, i, j] = a
                gens[2 * t, 1, i, j] = b
                gens[2 * t + 1, 0, j, i] = b
                gens[2 * t + 1, 1, j, i] = a


@njit(cache=True)
def scan_range(start, stop, n, r, q, p, tab, addt, mult, negt, invt, flags):
    """Test every tuple with index in [start, stop); flags[i - start] = 1 when
    the tuple does not generate.  Index digits are base q, first entry most
    significant; entries run over (a_1, b_1, ..., a_r, b_r) in row-major order."""
    D = 2 * r * n * n
    digits = np.zeros(D, dtype=np.int64)
    x = start
    for d in range(D - 1, -1, -1):
        digits[d] = x % q
        x //= q
    gens = np.zeros((2 * r, 2, n, n), dtype=np.int64)
    N = 2 * n * n
    count = 0
    for idx in range(start, stop):
        _load_tuple(digits, r, n, gens)
        if closure_dim(gens, n, p, tab, addt, mult, negt, invt, True) < N:
            flags[idx - start] = 1
            count += 1
        # odometer step
        d = D - 1
        while d >= 0:
            digits[d] += 1
            if digits[d] < q:
                break
            digits[d] = 0
            d -= 1
    return count


@njit(cache=True)
def scan_samples(codes, n, r, p, tab, addt, mult, negt, invt, flags):
    """Like :func:`scan_range` on explicit rows of digit codes."""
    gens = np.zeros((2 * r, 2, n, n), dtype=np.int64)
    N = 2 * n * n
    count = 0
    for s in range(codes.shape[0]):
        _load_tuple(codes[s], r, n, gens)
        if closure_dim(gens, n, p, tab, addt, mult, negt, invt, True) < N:
            flags[s] = 1
            count += 1
    return count


def tuple_closure_dim(F: FieldCtx, pairs, tables: FieldTables | None = None) -> int:
    """Kernel closure dimension for a list of (a, b) code arrays over F."""
    tables = tables or FieldTables(F)
    pairs = [(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) for a, b in pairs]
    n = pairs[0][0].shape[0] if pairs else 1
    gens = np.zeros((2 * len(pairs), 2, n, n), dtype=np.int64)
    for t, (a, b) in enumerate(pairs):
        gens[2 * t, 0], gens[2 * t, 1] = a, b
        gens[2 * t + 1, 0], gens[2 * t + 1, 1] = b.T, a.T
    return int(closure_dim(gens, n, *tables.args(), False))
