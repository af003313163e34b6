"""Long Weierstrass curves over Z/nZ.

Points are ``None`` (the point at infinity) or a tuple ``(x, y)`` of ints
in ``[0, n)``.  Arithmetic is affine on purpose: every slope denominator
goes through ``inv_mod``, so a zero divisor surfaces as NonInvertible
with a factor of n instead of being absorbed by projective coordinates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import NonInvertible, NoSquareRoot, ParameterFailure
from .residue import inv_mod, jacobi, sqrt_mod_int

INFINITY = None
Point = tuple  # (x, y) or None


@dataclass(frozen=True)
class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z/nZ."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    n: int
    b2: int = field(init=False, compare=False)
    b4: int = field(init=False, compare=False)
    b6: int = field(init=False, compare=False)
    b8: int = field(init=False, compare=False)
    disc: int = field(init=False, compare=False)

    def __post_init__(self):
        n = self.n
        a1, a2, a3, a4, a6 = (c % n for c in (self.a1, self.a2, self.a3, self.a4, self.a6))
        for name, v in zip(("a1", "a2", "a3", "a4", "a6"), (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, v)
        b2 = (a1 * a1 + 4 * a2) % n
        b4 = (a1 * a3 + 2 * a4) % n
        b6 = (a3 * a3 + 4 * a6) % n
        b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4) % n
        disc = (-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % n
        for name, v in (("b2", b2), ("b4", b4), ("b6", b6), ("b8", b8), ("disc", disc)):
            object.__setattr__(self, name, v)

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    def is_short(self) -> bool:
        return self.a1 == self.a2 == self.a3 == 0

    def j_invariant(self) -> int:
        c4 = (self.b2 * self.b2 - 24 * self.b4) % self.n
        return c4**3 * inv_mod(self.disc, self.n) % self.n

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return (lhs - rhs) % self.n == 0

    def lift_x(self, x: int) -> list:
        """All points with abscissa x, by brute force over y (tiny n only)."""
        return [(x, y) for y in range(self.n) if self.contains((x, y))]

    def __str__(self):
        return "y^2 + {}xy + {}y = x^3 + {}x^2 + {}x + {} mod {}".format(*self.coeffs, self.n)


def make_curve(a1: int, a2: int, a3: int, a4: int, a6: int, n: int) -> Curve:
    """Build a curve and check its discriminant is a unit mod n."""
    E = Curve(a1, a2, a3, a4, a6, n)
    inv_mod(E.disc, n)
    return E


def short_curve(a4: int, a6: int, n: int) -> Curve:
    return make_curve(0, 0, 0, a4, a6, n)


def neg(E: Curve, P):
    if P is None:
        return None
    x, y = P
    return x, (-y - E.a1 * x - E.a3) % E.n


def add(E: Curve, P, Q):
    """Chord-and-tangent addition; NonInvertible carries a factor of n."""
    if P is None:
        return Q
    if Q is None:
        return P
    n = E.n
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        s = (y1 + y2 + E.a1 * x1 + E.a3) % n
        if s == 0:
            return None
        if y1 != y2:
            # (y1 - y2) * s == 0 mod n with both factors nonzero
            raise NonInvertible(math.gcd(s, n), n)
        inv = inv_mod(s, n)
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) * inv % n
        nu = (-x1**3 + E.a4 * x1 + 2 * E.a6 - E.a3 * y1) * inv % n
    else:
        inv = inv_mod(x2 - x1, n)
        lam = (y2 - y1) * inv % n
        nu = (y1 * x2 - y2 * x1) * inv % n
    x3 = (lam * lam + E.a1 * lam - E.a2 - x1 - x2) % n
    y3 = (-(lam + E.a1) * x3 - nu - E.a3) % n
    return x3, y3


def sub(E: Curve, P, Q):
    return add(E, P, neg(E, Q))


def scalar_mul(E: Curve, k: int, P):
    if k < 0:
        return scalar_mul(E, -k, neg(E, P))
    result = None
    addend = P
    while k:
        if k & 1:
            result = add(E, result, addend)
        k >>= 1
        if k:
            addend = add(E, addend, addend)
    return result


def multiples(E: Curve, T, count: int) -> list:
    """[T, 2T, ..., count*T] by repeated addition."""
    out = []
    P = None
    for _ in range(count):
        P = add(E, P, T)
        out.append(P)
    return out


def verify_exact_order(E: Curve, T, d: int) -> bool:
    """True iff kT is affine for 1 <= k < d and dT = O.

    Over a field this is the same as psi_k(T) being a unit for every
    1 <= k < d; over Z/nZ a zero divisor met on the way raises
    NonInvertible, which is a factor of n either way.
    """
    if T is None:
        return False
    P = None
    for _ in range(d - 1):
        P = add(E, P, T)
        if P is None:
            return False
    return add(E, P, T) is None


# --- division polynomials -------------------------------------------------

def psi2_squared(E: Curve, x: int) -> int:
    """4x^3 + b2 x^2 + 2 b4 x + b6, which equals psi_2^2 on the curve."""
    return (4 * x**3 + E.b2 * x * x + 2 * E.b4 * x + E.b6) % E.n


def psi3(E: Curve, x: int) -> int:
    return (3 * x**4 + E.b2 * x**3 + 3 * E.b4 * x * x + 3 * E.b6 * x + E.b8) % E.n


def psi4_over_psi2(E: Curve, x: int) -> int:
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    return (2 * x**6 + b2 * x**5 + 5 * b4 * x**4 + 10 * b6 * x**3 + 10 * b8 * x * x
            + (b2 * b8 - b4 * b6) * x + b4 * b8 - b6 * b6) % E.n


class DivisionValues:
    """Values f_k at a fixed abscissa, where f_k = psi_k for odd k and
    f_k = psi_k / psi_2 for even k.  The recursion is division free."""

    def __init__(self, E: Curve, x: int):
        self.E = E
        self.x = x % E.n
        self.F = psi2_squared(E, x)
        self._memo = {0: 0, 1: 1, 2: 1, 3: psi3(E, x), 4: psi4_over_psi2(E, x)}

    def f(self, k: int) -> int:
        if k < 0:
            return -self.f(-k) % self.E.n
        memo = self._memo
        if k in memo:
            return memo[k]
        # iterative fill of everything the recursion will touch
        need, stack = set(), [k]
        while stack:
            j = stack.pop()
            if j in memo or j in need:
                continue
            need.add(j)
            m = j // 2
            deps = (m - 2, m - 1, m, m + 1, m + 2) if j % 2 == 0 else (m - 1, m, m + 1, m + 2)
            stack.extend(i for i in deps if i not in memo)
        n, F = self.E.n, self.F
        for j in sorted(need):
            m = j // 2
            f = memo
            if j % 2:
                if m % 2 == 0:
                    v = F * F % n * f[m + 2] * f[m] ** 3 - f[m - 1] * f[m + 1] ** 3
                else:
                    v = f[m + 2] * f[m] ** 3 - F * F % n * f[m - 1] * f[m + 1] ** 3
            else:
                v = f[m] * (f[m + 2] * f[m - 1] ** 2 - f[m - 2] * f[m + 1] ** 2)
            memo[j] = v % n
        return memo[k]

    def psi_squared(self, k: int) -> int:
        """psi_k^2 as a function of x alone."""
        v = self.f(k)
        return v * v * (self.F if k % 2 == 0 else 1) % self.E.n


def division_poly(E: Curve, k: int, P) -> int:
    """psi_k evaluated at the affine point P."""
    x, y = P
    v = DivisionValues(E, x).f(k)
    if k % 2 == 0:
        v = v * (2 * y + E.a1 * x + E.a3)
    return v % E.n


def mult_x(E: Curve, k: int, x: int) -> int:
    """x(kP) = x - psi_{k+1} psi_{k-1} / psi_k^2 from the abscissa of P."""
    dv = DivisionValues(E, x)
    n = E.n
    num = dv.f(k + 1) * dv.f(k - 1)
    if k % 2 == 0:
        # psi_{k+1} psi_{k-1} is odd*odd; psi_k^2 = F f_k^2
        den = dv.F * dv.f(k) ** 2
    else:
        num = num * dv.F
        den = dv.f(k) ** 2
    return (x - num * inv_mod(den, n)) % n


# --- sampling and twists ---------------------------------------------------

def random_point(E: Curve, rng: random.Random, budget: int = 1000):
    """Uniform x, then solve for y by completing the square."""
    n = E.n
    if n % 2 == 0:
        raise ValueError("random_point needs an odd modulus")
    inv2 = inv_mod(2, n)
    for _ in range(budget):
        x = rng.randrange(n)
        rhs = psi2_squared(E, x) * inv2 * inv2 % n
        try:
            z = sqrt_mod_int(rhs, n, rng)
        except NoSquareRoot:
            continue
        if rng.randrange(2):
            z = -z % n
        y = (z - (E.a1 * x + E.a3) * inv2) % n
        P = (x, y)
        if not E.contains(P):  # pragma: no cover - sqrt is verified
            continue
        return P
    raise ParameterFailure("no point found within budget")


def quadratic_twist(E: Curve, c: int) -> Curve:
    """y^2 = x^3 + a4 c^2 x + a6 c^3 for a short curve."""
    if not E.is_short():
        raise ValueError("twisting is implemented for short Weierstrass curves only")
    n = E.n
    return make_curve(0, 0, 0, E.a4 * c * c, E.a6 * c**3, n)


def find_nonresidue(n: int, rng: random.Random, budget: int = 256) -> int:
    for _ in range(budget):
        c = rng.randrange(2, n)
        g = math.gcd(c, n)
        if g != 1:
            raise NonInvertible(g, n)
        if jacobi(c, n) == -1:
            return c
    raise ParameterFailure("no quadratic nonresidue found")


def enumerate_points(E: Curve) -> list:
    """Every point of E over a small prime field (O first)."""
    n = E.n
    pts = [None]
    roots: dict[int, list[int]] = {}
    for y in range(n):
        roots.setdefault(y * y % n, []).append(y)
    inv2 = inv_mod(2, n) if n % 2 else None
    for x in range(n):
        if inv2 is None:
            pts.extend((x, y) for y in range(n) if E.contains((x, y)))
            continue
        rhs = psi2_squared(E, x) * inv2 * inv2 % n
        shift = (E.a1 * x + E.a3) * inv2
        for z in roots.get(rhs, []):
            pts.append((x, (z - shift) % n))
    return pts
