"""Integers modulo n.

Residues are plain Python ints in ``[0, n)`` throughout the hot paths; the
``ResidueRing``/``Residue`` pair is the typed front end for callers that
want operator syntax and mixed-ring checks.  Every inversion goes through
:func:`inv_mod`, which raises :class:`NonInvertible` carrying the gcd, so a
failed inversion modulo a composite hands the caller a factor.
"""

from __future__ import annotations

import math
import random

from .errors import NoSolution, NoSquareRoot, NonInvertible

SQRT_BUDGET = 64
TRIAL_BOUND = 10**6


def inv_mod(a: int, n: int) -> int:
    a %= n
    g = math.gcd(a, n)
    if g != 1:
        raise NonInvertible(g if a else n, n)
    return pow(a, -1, n)


class ResidueRing:
    """The ring Z/nZ, n >= 2."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus

    def __call__(self, value: int) -> "Residue":
        return Residue(value, self)

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ResidueRing", self.modulus))

    def __repr__(self):
        return f"Z/{self.modulus}Z"


class Residue:
    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: ResidueRing):
        self.value = value % ring.modulus
        self.ring = ring

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise ValueError(f"mixing residues of {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Residue(self.value + v, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Residue(self.value - v, self.ring)

    def __rsub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Residue(v - self.value, self.ring)

    def __mul__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else Residue(self.value * v, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ring)

    def __pow__(self, e: int):
        return pow_mod(self, e)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


def try_invert(a: Residue) -> Residue:
    """Inverse of ``a``; raises NonInvertible(gcd) otherwise."""
    return Residue(inv_mod(a.value, a.modulus), a.ring)


def pow_mod(a: Residue, e: int) -> Residue:
    # square-and-multiply; 0**0 == 1 by convention
    if e < 0:
        return pow_mod(try_invert(a), -e)
    n = a.modulus
    result, base = 1 % n, a.value
    while e:
        if e & 1:
            result = result * base % n
        base = base * base % n
        e >>= 1
    return Residue(result, a.ring)


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_int(a: int, n: int, rng: random.Random | None = None,
                 budget: int = SQRT_BUDGET) -> int:
    """Square root of ``a`` modulo odd ``n`` by Tonelli-Shanks.

    The algorithm is only guaranteed for prime ``n``; the answer is always
    verified by squaring, so a composite modulus yields either a genuine
    root, a NonInvertible factor, or NoSquareRoot.
    """
    if n % 2 == 0:
        raise ValueError("sqrt_mod needs an odd modulus")
    a %= n
    if a == 0:
        return 0
    g = math.gcd(a, n)
    if g != 1:
        raise NonInvertible(g, n)
    if pow(a, (n - 1) // 2, n) != 1:
        raise NoSquareRoot(f"{a} is not a square modulo {n}")
    rng = rng or random.Random(0)
    q, s = n - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(a, (n + 1) // 4, n)
    else:
        for _ in range(budget):
            z = rng.randrange(2, n)
            if pow(z, (n - 1) // 2, n) == n - 1:
                break
        else:
            raise NoSquareRoot("no quadratic nonresidue found within budget")
        m, c, t, r = s, pow(z, q, n), pow(a, q, n), pow(a, (q + 1) // 2, n)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % n
                i += 1
                if i == m:
                    raise NoSquareRoot(f"Tonelli-Shanks failed modulo {n}")
            b = pow(c, 1 << (m - i - 1), n)
            m, c = i, b * b % n
            t, r = t * c % n, r * b % n
    if r * r % n != a:
        raise NoSquareRoot(f"root verification failed modulo {n}")
    return r


def sqrt_mod(a: Residue, rng: random.Random | None = None,
             budget: int = SQRT_BUDGET) -> Residue:
    return Residue(sqrt_mod_int(a.value, a.modulus, rng, budget), a.ring)


def cornacchia(disc: int, n: int, rng: random.Random | None = None) -> tuple[int, int]:
    """Solve t^2 + disc*v^2 = 4n with t, v > 0.

    ``disc`` is the absolute value of a negative discriminant (so
    ``-disc`` is 0 or 1 mod 4).  Raises NoSolution when no solution is
    found along the Euclidean descent; NoSquareRoot / NonInvertible
    propagate from the square root of ``-disc``.
    """
    if disc <= 0:
        raise ValueError("disc must be positive")
    if 4 * n < 64:
        # tiny inputs: exhaustive search is exact and avoids mod-small corner cases
        for v in range(1, math.isqrt(4 * n // disc) + 1):
            t2 = 4 * n - disc * v * v
            t = math.isqrt(t2)
            if t > 0 and t * t == t2:
                return t, v
        raise NoSolution(f"no solution for disc {disc}, n {n}")
    x0 = sqrt_mod_int(-disc, n, rng)
    if (x0 - disc) % 2:
        x0 = n - x0
    a, b = 2 * n, x0
    limit = math.isqrt(4 * n)
    while b > limit:
        a, b = b, a % b
    rest = 4 * n - b * b
    if rest <= 0 or rest % disc:
        raise NoSolution(f"no solution for disc {disc}, n {n}")
    v2 = rest // disc
    v = math.isqrt(v2)
    if v * v != v2 or b == 0:
        raise NoSolution(f"no solution for disc {disc}, n {n}")
    return b, v


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_small_primes_cache: dict[int, list[int]] = {}


def _small_primes(bound: int) -> list[int]:
    if bound not in _small_primes_cache:
        _small_primes_cache[bound] = primes_up_to(bound)
    return _small_primes_cache[bound]


def pollard_rho(m: int, max_tries: int = 32, max_iter: int = 1 << 20) -> int | None:
    """A nontrivial factor of composite ``m`` (Brent's variant), or None."""
    if m % 2 == 0:
        return 2
    for c in range(1, max_tries + 1):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        steps = 0
        while g == 1 and steps < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % m
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % m
                    q = q * abs(x - y) % m
                g = math.gcd(q, m)
                k += 128
            r *= 2
            steps += r
        if g == m:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % m
                g = math.gcd(abs(x - ys), m)
        if 1 < g < m:
            return g
    return None


def factorize(m: int, trial_bound: int = TRIAL_BOUND) -> dict[int, int]:
    """Prime factorization by trial division then Pollard rho.

    Raises RuntimeError if rho gives up on a cofactor (never seen at
    the sizes this package works with).
    """
    if m < 1:
        raise ValueError("m must be positive")
    factors: dict[int, int] = {}
    bound = min(trial_bound, math.isqrt(m) + 1)
    for p in _small_primes(max(bound, 2)):
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_probable_prime(k):
            factors[k] = factors.get(k, 0) + 1
            continue
        f = pollard_rho(k)
        if f is None:
            raise RuntimeError(f"could not split {k}")
        stack += [f, k // f]
    return dict(sorted(factors.items()))


def small_divisor_search(m: int, lo: int, hi: int, forbidden=()) -> int | None:
    """Smallest odd d in [lo, hi] with d | m, gcd(d, m/d) = 1 and d coprime
    to every entry of ``forbidden``; None if there is none."""
    if m <= 0:
        raise ValueError("m must be positive")
    odd = m
    while odd % 2 == 0:
        odd //= 2
    # gcd(d, m/d) = 1 forces d to be a product of full prime powers of m
    blocks = [p**e for p, e in factorize(odd).items()
              if all(math.gcd(p, f) == 1 for f in forbidden)]
    candidates = {1}
    for q in blocks:
        candidates |= {c * q for c in candidates if c * q <= hi}
    for d in sorted(candidates):
        if lo <= d <= hi and m % d == 0 and math.gcd(d, m // d) == 1:
            return d
    return None


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_perfect_power(n: int) -> tuple[int, int] | None:
    """(b, k) with b**k == n, k >= 2 and b minimal, or None."""
    if n < 2:
        raise ValueError("n must be at least 2")
    for k in range(n.bit_length(), 1, -1):
        b = integer_root(n, k)
        if b > 1 and b**k == n:
            return b, k
    return None
