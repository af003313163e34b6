"""Cyclic convolution on (Z/nZ)^d.

Vectors are plain lists of ints reduced mod n, indexed by Z/dZ.  The
``RingVector`` class wraps such a list for callers that want an object;
the module-level functions are what the hot loops use.

Two convolution routes are provided and must agree bit for bit:

* ``schoolbook``: the O(d^2) definition, one slice-and-dot per output.
* ``kronecker``: pack both vectors into single Python integers, multiply
  once (CPython switches to Karatsuba for big operands), unpack and fold.
"""

from __future__ import annotations

from operator import mul

from .errors import NotInvertible
from .residue import inv_mod

DEFAULT_METHOD = "kronecker"


def conv_schoolbook(a: list[int], b: list[int], n: int, wrap: int = 1) -> list[int]:
    d = len(a)
    if len(b) != d:
        raise ValueError("length mismatch")
    if wrap == 1:
        # r[k] = b[-k], so b[(j - i) % d] == rr[(d - j) % d + i]
        r = [b[-k % d] for k in range(d)]
        rr = r + r
        out = []
        for j in range(d):
            s = (d - j) % d
            out.append(sum(map(mul, a, rr[s:s + d])) % n)
        return out
    # x^d = wrap: terms that wrap around pick up a factor wrap
    out = []
    for j in range(d):
        low = sum(a[i] * b[j - i] for i in range(j + 1))
        high = sum(a[i] * b[j - i + d] for i in range(j + 1, d))
        out.append((low + wrap * high) % n)
    return out


def _pack(v: list[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in v), "little")


def conv_kronecker(a: list[int], b: list[int], n: int, wrap: int = 1) -> list[int]:
    d = len(a)
    if len(b) != d:
        raise ValueError("length mismatch")
    # each coefficient of the plain product is < d * n^2
    width = ((2 * (n - 1).bit_length() + d.bit_length()) // 8) + 1
    prod = _pack(a, width) * _pack(b, width)
    raw = prod.to_bytes(width * 2 * d, "little")
    coeffs = [int.from_bytes(raw[i:i + width], "little") for i in range(0, width * 2 * d, width)]
    if wrap == 1:
        return [(coeffs[j] + coeffs[j + d]) % n for j in range(d)]
    return [(coeffs[j] + wrap * coeffs[j + d]) % n for j in range(d)]


_METHODS = {"schoolbook": conv_schoolbook, "kronecker": conv_kronecker}


def conv(a: list[int], b: list[int], n: int, method: str | None = None,
         wrap: int = 1) -> list[int]:
    """c_j = sum_i a_i b_{j-i}; with ``wrap`` != 1 the product is taken
    in R[x]/(x^d - wrap) instead of R[x]/(x^d - 1)."""
    return _METHODS[method or DEFAULT_METHOD](a, b, n, wrap)


def pointwise(a: list[int], b: list[int], n: int) -> list[int]:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return [x * y % n for x, y in zip(a, b)]


def shift(a: list[int], k: int = 1) -> list[int]:
    """sigma^k: component i of the result is a_{i-k}."""
    k %= len(a)
    return a[-k:] + a[:-k] if k else list(a)


def delta(d: int, k: int = 0) -> list[int]:
    v = [0] * d
    v[k % d] = 1
    return v


def _strip(p: list[int]) -> list[int]:
    # high-degree-first; drop leading zeros
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _poly_sub_scaled(p: list[int], q: list[int], c: int, n: int) -> list[int]:
    """p - c*q for high-first polynomials (any lengths)."""
    if len(q) > len(p):
        p = [0] * (len(q) - len(p)) + p
    off = len(p) - len(q)
    return p[:off] + [(x - c * y) % n for x, y in zip(p[off:], q)]


def conv_invert(a: list[int], n: int) -> list[int]:
    """Inverse of ``a`` for the convolution product.

    Extended Euclid of a(X) against X^d - 1 over Z/nZ.  Leading
    coefficients are inverted with ``inv_mod``, so a zero-divisor raises
    NonInvertible(g) with a factor of n.  A non-constant gcd raises
    NotInvertible.
    """
    d = len(a)
    r0 = [1] + [0] * (d - 1) + [n - 1]  # X^d - 1, high first
    r1 = _strip([x % n for x in reversed(a)])
    t0: list[int] = []
    t1 = [1]
    while r1 and len(r1) > 1:
        lead_inv = inv_mod(r1[0], n)
        quot = [0] * (len(r0) - len(r1) + 1)
        r = r0
        while len(r) >= len(r1):
            c = r[0] * lead_inv % n
            quot[len(quot) - (len(r) - len(r1)) - 1] = c
            # subtract c * X^k * r1, which cancels the leading term
            r = _strip([(x - c * y) % n for x, y in zip(r[1:], r1[1:])] + r[len(r1):])
        t = t0
        for i, c in enumerate(quot):
            if c:
                shifted = t1 + [0] * (len(quot) - 1 - i)
                t = _poly_sub_scaled(t, shifted, c, n)
        r0, r1 = r1, r
        t0, t1 = t1, _strip(t)
    if not r1:
        raise NotInvertible("gcd with X^d - 1 is not constant")
    c_inv = inv_mod(r1[0], n)
    # reduce t1 mod X^d - 1 and scale
    low = list(reversed(t1))
    out = [0] * d
    for i, c in enumerate(low):
        out[i % d] = (out[i % d] + c) % n
    out = [c * c_inv % n for c in out]
    if conv(a, out, n) != delta(d):
        raise NotInvertible("inverse failed verification")
    return out


class RingVector:
    """An element of (Z/nZ)^d with the convolution structure."""

    __slots__ = ("coords", "modulus")

    def __init__(self, coords, modulus: int):
        self.coords = tuple(int(c) % modulus for c in coords)
        self.modulus = modulus
        if not self.coords:
            raise ValueError("empty vector")

    @classmethod
    def delta(cls, d: int, modulus: int, k: int = 0) -> "RingVector":
        return cls(delta(d, k), modulus)

    @classmethod
    def ones(cls, d: int, modulus: int) -> "RingVector":
        return cls([1] * d, modulus)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i % len(self.coords)]

    def _check(self, other: "RingVector"):
        if other.modulus != self.modulus or len(other) != len(self):
            raise ValueError("vectors live in different modules")

    def conv(self, other: "RingVector", method: str | None = None) -> "RingVector":
        self._check(other)
        return RingVector(conv(list(self.coords), list(other.coords), self.modulus, method),
                          self.modulus)

    def pointwise(self, other: "RingVector") -> "RingVector":
        self._check(other)
        return RingVector(pointwise(self.coords, other.coords, self.modulus), self.modulus)

    def shift(self, k: int = 1) -> "RingVector":
        return RingVector(shift(list(self.coords), k), self.modulus)

    def invert(self) -> "RingVector":
        return RingVector(conv_invert(list(self.coords), self.modulus), self.modulus)

    def __add__(self, other):
        self._check(other)
        return RingVector([x + y for x, y in zip(self.coords, other.coords)], self.modulus)

    def __sub__(self, other):
        self._check(other)
        return RingVector([x - y for x, y in zip(self.coords, other.coords)], self.modulus)

    def scale(self, c: int) -> "RingVector":
        return RingVector([c * x for x in self.coords], self.modulus)

    def __eq__(self, other):
        if isinstance(other, RingVector):
            return self.modulus == other.modulus and self.coords == other.coords
        if isinstance(other, (list, tuple)):
            return len(other) == len(self) and all(
                (x - y) % self.modulus == 0 for x, y in zip(self.coords, other))
        return NotImplemented

    def __hash__(self):
        return hash((self.coords, self.modulus))

    def __repr__(self):
        return f"RingVector({list(self.coords)}, mod {self.modulus})"
