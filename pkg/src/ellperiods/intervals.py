"""Rigorous rational enclosures of logarithms and related constants.

Natural logs are computed from 2*atanh(z) = ln((1+z)/(1-z)) in fixed
point with directed rounding and an explicit bound on the series tail.
Everything returns ``Fraction`` endpoints, so comparisons against decimal
constants are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PREC = 256

# pi to 60 decimals, widened by one unit in the last place each way
_PI_DIGITS = 3141592653589793238462643383279502884197169399375105820974944
PI_LO = Fraction(_PI_DIGITS - 1, 10**60)
PI_HI = Fraction(_PI_DIGITS + 1, 10**60)


def _atanh_fixed(p: int, q: int, prec: int) -> tuple[int, int]:
    """Bounds (lo, hi) on 2^prec * atanh(p/q) for 0 <= p/q <= 1/3."""
    if p == 0:
        return 0, 0
    scale = 1 << prec
    lo = hi = 0
    num, den = scale * p, q
    p2, q2 = p * p, q * q
    j = 0
    while True:
        k = 2 * j + 1
        t_floor = num // (den * k)
        lo += t_floor
        hi += -(-num // (den * k))
        num *= p2
        den *= q2
        j += 1
        # remaining terms are at most z^k / (k (1 - z^2)) <= (9/8) z^k / k
        if num * 9 < den * 8 * (2 * j + 1):
            tail = -(-(9 * num) // (8 * den * (2 * j + 1)))
            return lo, hi + tail


def _ln_small(m: int, prec: int) -> tuple[int, int]:
    """Bounds on 2^prec * ln(m) for an integer m >= 1 of modest size."""
    j = m.bit_length() - 1
    base = 1 << j
    # m / 2^j in [1, 2); z = (m - 2^j) / (m + 2^j) in [0, 1/3)
    lo_z, hi_z = _atanh_fixed(m - base, m + base, prec)
    lo2, hi2 = _LN2[prec] if prec in _LN2 else _ln2(prec)
    return j * lo2 + 2 * lo_z, j * hi2 + 2 * hi_z


_LN2: dict[int, tuple[int, int]] = {}


def _ln2(prec: int) -> tuple[int, int]:
    lo, hi = _atanh_fixed(1, 3, prec)
    _LN2[prec] = (2 * lo, 2 * hi)
    return _LN2[prec]


def ln_int_bounds(N: int, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
    if N < 1:
        raise ValueError("logarithm of a non-positive number")
    shift = max(0, N.bit_length() - prec - 8)
    m = N >> shift
    lo_m, _ = _ln_small(m, prec)
    if (m << shift) == N:
        _, hi_m = _ln_small(m, prec)
    else:
        _, hi_m = _ln_small(m + 1, prec)
    lo2, hi2 = _LN2[prec] if prec in _LN2 else _ln2(prec)
    scale = 1 << prec
    return (Fraction(lo_m + shift * lo2, scale), Fraction(hi_m + shift * hi2, scale))


def ln_bounds(x, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo <= ln(x) <= hi for a positive int or Fraction."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    lo_n, hi_n = ln_int_bounds(x.numerator, prec)
    lo_d, hi_d = ln_int_bounds(x.denominator, prec)
    return lo_n - hi_d, hi_n - lo_d


def sqrt_bounds(x, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
    x = Fraction(x)
    scale = 1 << prec
    # sqrt(a/b) = sqrt(a b) / b
    r = math.isqrt(x.numerator * x.denominator * scale * scale)
    lo = Fraction(r, scale * x.denominator)
    hi = lo if r * r == x.numerator * x.denominator * scale * scale else Fraction(r + 1, scale * x.denominator)
    return lo, hi


def _round_out(v: Fraction, prec: int, up: bool) -> Fraction:
    # keep denominators bounded: snap outward to a multiple of 2^-prec
    scale = 1 << prec
    q = v * scale
    k = -(-q.numerator // q.denominator) if up else q.numerator // q.denominator
    return Fraction(k, scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, v) -> "Interval":
        v = Fraction(v)
        return cls(v, v)

    @staticmethod
    def _coerce(v) -> "Interval":
        return v if isinstance(v, Interval) else Interval.point(v)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ps = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def ln(self, prec: int = DEFAULT_PREC) -> "Interval":
        return Interval(ln_bounds(self.lo, prec)[0], ln_bounds(self.hi, prec)[1])

    def tidy(self, prec: int = DEFAULT_PREC) -> "Interval":
        return Interval(_round_out(self.lo, prec, False), _round_out(self.hi, prec, True))

    def __ge__(self, other):
        """Certainly >= : every point of self is >= every point of other."""
        return self.lo >= self._coerce(other).hi

    def __le__(self, other):
        return self.hi <= self._coerce(other).lo

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def ln_interval(x, prec: int = DEFAULT_PREC) -> Interval:
    return Interval(*ln_bounds(x, prec))


def pi_interval() -> Interval:
    return Interval(PI_LO, PI_HI)


def beta_interval(prec: int = DEFAULT_PREC) -> Interval:
    """beta = 1/(2 + sqrt 2) = 1 - sqrt(2)/2."""
    lo, hi = sqrt_bounds(2, prec)
    return Interval(1 - hi / 2, 1 - lo / 2)


def entropy(parts, prec: int = DEFAULT_PREC) -> Interval:
    """H(p_1, ..., p_K) = -sum p_k ln p_k for rational or interval parts."""
    total = Interval.point(0)
    for p in parts:
        p = Interval._coerce(p)
        total = total - (p * p.ln(prec)).tidy(prec)
    return total
