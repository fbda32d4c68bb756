"""Exact fields: the rationals, prime fields and their finite extensions.

Every operation is vectorized over numpy arrays and works on scalars too.
Element representations:

* ``Q``        -- ``fractions.Fraction`` in object arrays,
* ``F<p>``     -- residues ``0 .. p-1`` (int64 when ``p < 2**31``),
* ``F<p>^<k>`` -- integer codes ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` standing
  for the polynomial ``c_0 + c_1 x + ...`` modulo a fixed irreducible.

Codes ``0 .. p-1`` of an extension are its prime subfield, so prime-field
data can be read in an extension without conversion.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from itertools import product as _iproduct

import numpy as np

from . import polys

__all__ = ["FieldCtx", "Q", "GF", "parse_field", "FieldError"]

_MAX_EXT_ORDER = 1 << 20
_INT64_SAFE = 1 << 31


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class FieldCtx:
    """An exact field.  Instances are interned, immutable and hashable.

    Build them with :data:`Q`, :func:`GF` or :func:`parse_field` rather than
    calling the constructor.
    """

    def __init__(self, kind, p=0, k=1, modulus=None):
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        if kind == "Q":
            self.dtype = object
            self._zero, self._one = Fraction(0), Fraction(1)
        elif kind == "prime":
            self.dtype = np.int64 if p < _INT64_SAFE else object
            self._zero, self._one = 0, 1
        else:
            self.dtype = np.int64
            self._zero, self._one = 0, 1
            self._build_tables()

    # -- identity -------------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def cardinality(self):
        return math.inf if self.kind == "Q" else self.p ** self.k

    @property
    def order(self) -> int:
        """Number of elements; only for finite fields."""
        if self.kind == "Q":
            raise FieldError("Q is infinite")
        return self.p ** self.k

    @property
    def is_finite(self) -> bool:
        return self.kind != "Q"

    @property
    def spec(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "prime":
            return f"F{self.p}"
        return f"F{self.p}^{self.k}"

    def __repr__(self):
        return f"FieldCtx({self.spec})"

    def __reduce__(self):
        return (parse_field, (self.spec,))

    # -- construction helpers ---------------------------------------------
    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def __call__(self, x):
        """Coerce an int, Fraction or string to a field element."""
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, str):
            x = int(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return self.div(self(x.numerator), self(x.denominator))
            x = x.numerator
        x = int(x)
        if self.kind == "prime":
            return x % self.p
        if 0 <= x < self.order:
            return x
        # foreign integers are read in the prime subfield
        return x % self.p

    def asarray(self, values) -> np.ndarray:
        """Nested lists of elements (or coercible values) -> ndarray."""
        if isinstance(values, np.ndarray) and values.dtype == self.dtype:
            if self.kind == "Q" or values.size == 0:
                return values
            if values.min() >= 0 and values.max() < self.order:
                return values
        arr = np.asarray(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = self(arr[idx])
        return out.astype(self.dtype) if self.dtype is not object else out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self._zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self._one
        return out

    def elements(self) -> np.ndarray:
        """All elements in canonical order (codes ``0 .. q-1``)."""
        return np.arange(self.order, dtype=np.int64).astype(self.dtype)

    def random(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        if self.kind == "Q":
            vals = rng.integers(-5, 6, size=shape)
            dens = rng.integers(1, 4, size=shape)
            out = np.empty(np.shape(vals), dtype=object)
            for idx in np.ndindex(out.shape):
                out[idx] = Fraction(int(vals[idx]), int(dens[idx]))
            return out
        vals = rng.integers(0, self.order, size=shape, dtype=np.int64)
        return vals.astype(self.dtype)

    # -- arithmetic -----------------------------------------------------
    def add(self, x, y):
        if self.kind == "Q":
            return np.add(x, y)
        if self.kind == "prime":
            return np.mod(np.add(x, y), self.p)
        if self.p == 2:
            return np.bitwise_xor(x, y)
        return self._from_digits((self._digits[x] + self._digits[y]) % self.p)

    def neg(self, x):
        if self.kind == "Q":
            return np.negative(x)
        if self.kind == "prime":
            return np.mod(np.negative(x), self.p)
        return self._neg[x]

    def sub(self, x, y):
        if self.kind == "Q":
            return np.subtract(x, y)
        if self.kind == "prime":
            return np.mod(np.subtract(x, y), self.p)
        return self.add(x, self._neg[y])

    def mul(self, x, y):
        if self.kind == "Q":
            return np.multiply(x, y)
        if self.kind == "prime":
            return np.mod(np.multiply(x, y), self.p)
        x = np.asarray(x)
        y = np.asarray(y)
        res = np.where((x == 0) | (y == 0), 0,
                       self._exp[(self._log[x] + self._log[y]) % (self.order - 1)])
        return res[()] if res.ndim == 0 else res

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return np.divide(1, np.asarray(x, dtype=object)) if np.ndim(x) else Fraction(1) / x
        if self.kind == "prime":
            if np.ndim(x):
                return np.array([pow(int(v), -1, self.p) for v in np.ravel(x)],
                                dtype=self.dtype).reshape(np.shape(x))
            return pow(int(x), -1, self.p)
        return self._exp[(-self._log[x]) % (self.order - 1)]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        """Elementwise power by a non-negative integer."""
        result = np.full(np.shape(x), self._one, dtype=self.dtype) if np.ndim(x) else self._one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, x):
        return self.pow(x, self.p) if self.p else x

    def sum(self, a, axis=None):
        a = np.asarray(a)
        if self.kind == "Q":
            if a.size == 0:
                return self.zeros(a.shape[:axis] + a.shape[axis + 1:] if axis is not None else ())
            return a.sum(axis=axis)
        if self.kind == "prime":
            if a.dtype == object:
                return np.mod(a.sum(axis=axis), self.p)
            return np.mod(a.sum(axis=axis), self.p)
        if self.p == 2:
            if axis is None:
                return np.bitwise_xor.reduce(a, axis=None) if a.size else 0
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self._digits[a]
        if axis is None:
            d = d.reshape(-1, self.k)
            axis = 0
        elif axis < 0:
            axis += a.ndim
        return self._from_digits(d.sum(axis=axis) % self.p)

    def dot(self, x, y):
        return self.sum(self.mul(x, y), axis=-1)

    def matmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        inner = a.shape[-1]
        if self.kind == "Q":
            return _rational_matmul(a, b) if inner else self.zeros(a.shape[:-1] + b.shape[-1:])
        if self.kind == "prime" and self.dtype is not object:
            if (self.p - 1) ** 2 * max(inner, 1) < (1 << 63):
                return np.mod(np.matmul(a, b), self.p)
        if self.kind == "prime":
            return np.mod(np.matmul(a.astype(object), b.astype(object)), self.p).astype(self.dtype)
        return self.sum(self.mul(a[..., :, :, None], b[..., None, :, :]), axis=-2)

    def scatter_add(self, size: int, idx, vals) -> np.ndarray:
        """``out[idx[t]] += vals[t]`` for all t, into a fresh length-``size`` vector."""
        if self.kind == "Q":
            out = self.zeros(size)
            np.add.at(out, idx, vals)
            return out
        if self.kind == "prime":
            out = np.zeros(size, dtype=self.dtype)
            np.add.at(out, idx, vals)
            return np.mod(out, self.p)
        if self.p == 2:
            out = np.zeros(size, dtype=np.int64)
            np.bitwise_xor.at(out, idx, vals)
            return out
        out = np.zeros((size, self.k), dtype=np.int64)
        np.add.at(out, idx, self._digits[vals])
        return self._from_digits(out % self.p)

    # -- extension-field tables ----------------------------------------
    def _from_digits(self, d):
        return d @ self._pw

    def _build_tables(self):
        p, k, q = self.p, self.k, self.p ** self.k
        codes = np.arange(q, dtype=np.int64)
        self._pw = p ** np.arange(k, dtype=np.int64)
        self._digits = (codes[:, None] // self._pw[None, :]) % p
        self._neg = self._from_digits((-self._digits) % p)
        mod = list(self.modulus)

        def times_matrix(g: int) -> np.ndarray:
            # column j = digits of g * x^j reduced mod the modulus
            dg = [int(v) for v in self._digits[g]]
            cols = []
            for j in range(k):
                r = polys.polymod(polys.polymul(dg, [0] * j + [1], p), mod, p)
                cols.append(r + [0] * (k - len(r)))
            return np.array(cols, dtype=np.int64).T

        # smallest-code primitive element
        for g in range(2 if q > 2 else 1, q):
            m = times_matrix(g)
            exp = np.empty(q - 1, dtype=np.int64)
            cur = self._digits[1].copy()
            ok = True
            for e in range(q - 1):
                c = int(cur @ self._pw)
                if e and c == 1:
                    ok = False
                    break
                exp[e] = c
                cur = (m @ cur) % p
            if ok:
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element found")
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self._exp = exp
        self._log = log
        self.primitive = g

    # -- subfields and extensions ----------------------------------------
    def extension(self, degree: int) -> "FieldCtx":
        """The degree-``degree`` extension of this (finite) field."""
        if self.kind == "Q":
            raise FieldError("no finite extensions of Q are supported")
        return GF(self.p, self.k * degree)

    def is_subfield_of(self, other: "FieldCtx") -> bool:
        if self.kind == "Q" or other.kind == "Q":
            return self.kind == other.kind
        return self.p == other.p and other.k % self.k == 0

    def embedding(self, other: "FieldCtx") -> np.ndarray | None:
        """Lookup array sending codes of ``self`` to codes of ``other``.

        ``None`` means the identity (same field, or Q into Q).
        """
        if other is self:
            return None
        if not self.is_subfield_of(other):
            raise FieldError(f"{self.spec} does not embed in {other.spec}")
        if self.kind == "prime":
            return np.arange(self.p, dtype=np.int64)
        return _embedding_table(self, other)

    def embed(self, x, other: "FieldCtx"):
        table = self.embedding(other)
        if table is None:
            return x
        return table[np.asarray(x, dtype=np.int64)]

    def fmt(self, x) -> str:
        return str(x)


def _common_denominator(a):
    den = 1
    for x in a.ravel():
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = den * d // math.gcd(den, d)
    return den


def _rational_matmul(a, b):
    """Matrix product over Q on integer numerators with one common denominator."""
    da, db = _common_denominator(a), _common_denominator(b)
    ai = np.frompyfunc(lambda x: int(x * da), 1, 1)(a) if da != 1 else \
        np.frompyfunc(int, 1, 1)(a)
    bi = np.frompyfunc(lambda x: int(x * db), 1, 1)(b) if db != 1 else \
        np.frompyfunc(int, 1, 1)(b)
    prod = np.matmul(ai, bi)
    den = da * db
    return np.frompyfunc(lambda x: Fraction(x, den), 1, 1)(prod)


@functools.lru_cache(maxsize=None)
def _embedding_table(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    # smallest-code root of the small modulus in the big field
    elems = big.elements()
    val = big.zeros(elems.shape)
    for c in reversed(small.modulus):
        val = big.add(big.mul(val, elems), big(c))
    roots = np.nonzero(val == 0)[0]
    rho = int(roots[0])
    powers = [big.one]
    for _ in range(small.k - 1):
        powers.append(int(big.mul(powers[-1], rho)))
    powers = np.array(powers, dtype=np.int64)
    d = small._digits
    table = big.sum(big.mul(d, powers[None, :]), axis=1)
    table.flags.writeable = False
    return table


@functools.lru_cache(maxsize=None)
def _prime_field(p: int) -> FieldCtx:
    return FieldCtx("prime", p)


@functools.lru_cache(maxsize=None)
def _ext_field(p: int, k: int) -> FieldCtx:
    if p ** k > _MAX_EXT_ORDER:
        raise FieldError(f"F{p}^{k} exceeds the supported size {_MAX_EXT_ORDER}")
    mod = polys.lowest_irreducible(p, k)
    if not polys.is_irreducible(list(mod), p):  # pragma: no cover
        raise FieldError("modulus is reducible")
    return FieldCtx("ext", p, k, tuple(mod))


def GF(p: int, k: int = 1) -> FieldCtx:
    """The field with ``p**k`` elements (``p`` prime)."""
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    return _prime_field(p) if k == 1 else _ext_field(p, k)


Q = FieldCtx("Q")

_SPEC_RE = re.compile(r"^F(\d+)(?:\^(\d+))?$")


def parse_field(spec: str) -> FieldCtx:
    """Parse ``"Q"``, ``"F<p>"`` or ``"F<p>^<k>"``."""
    spec = spec.strip()
    if spec == "Q":
        return Q
    m = _SPEC_RE.match(spec)
    if not m:
        raise FieldError(f"bad field spec {spec!r}; expected Q, F<p> or F<p>^<k>")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    if not _is_prime(p):
        raise FieldError(f"F{p}: {p} is not prime (write prime powers as F<p>^<k>)")
    return GF(p, k)


def field_of_order(q: int) -> FieldCtx:
    """The finite field with ``q`` elements, ``q`` a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise FieldError(f"{q} is not a prime power")
    return GF(p, k)


def all_vectors(field: FieldCtx, length: int):
    """Every vector of ``field**length`` in mixed-radix order (last entry fastest)."""
    elems = list(field.elements())
    for combo in _iproduct(elems, repeat=length):
        yield np.array(combo, dtype=field.dtype)
