"""Counting sum-zero integer vectors of small L1 norm.

S_d : vectors in Z^d with sum 0 and L1 norm exactly d - 1.
I   : vectors with sum 0 and L1 norm <= d - 1.
J   : vectors of I with sum_k k e_k = 0 mod d.

Small d is handled by direct dynamic programming and enumeration; large d
(up to a few thousand) uses the closed form

    #{sum 0, norm 2j} = sum_p C(d, p) C(j-1, p-1) C(d-p+j-1, j),

obtained by choosing p positive coordinates summing to j and letting the
remaining d-p coordinates absorb -j (Vandermonde).
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

from .intervals import Interval, entropy, ln_bounds, ln_interval, pi_interval


def lattice_matrix(d: int) -> list[list[int]]:
    """The (d-1) x d matrix whose row k has -1, 2, -1 at columns k, k+1, k+2 mod d."""
    rows = []
    for k in range(d - 1):
        row = [0] * d
        row[k % d] -= 1
        row[(k + 1) % d] += 2
        row[(k + 2) % d] -= 1
        rows.append(row)
    return rows


def bareiss_det(M: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    A = [list(r) for r in M]
    size = len(A)
    sign, prev = 1, 1
    for k in range(size - 1):
        if A[k][k] == 0:
            for i in range(k + 1, size):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def unit_lattice_det(d: int) -> int:
    if d < 3:
        raise ValueError("d must be at least 3")
    return bareiss_det([row[1:] for row in lattice_matrix(d)])


def tridiagonal_det(size: int) -> int:
    """D_size for the 2, -1 tridiagonal matrix: D_k = 2 D_{k-1} - D_{k-2}."""
    a, b = 1, 2  # D_0, D_1
    if size == 0:
        return 1
    for _ in range(size - 1):
        a, b = b, 2 * b - a
    return b


# --- closed forms ------------------------------------------------------------

def count_norm_sum0(d: int, j: int) -> int:
    """Vectors of Z^d with sum 0 and L1 norm 2j."""
    if j == 0:
        return 1
    # successive terms differ by a rational factor; every term is an integer
    term = d * comb(d + j - 2, j)
    total = term
    for p in range(1, min(d, j)):
        term = term * (d - p) * (j - p) * (d - p - 1) // ((p + 1) * p * (d - p + j - 1))
        total += term
    return total


def count_Sd(d: int) -> int:
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and at least 3")
    return count_norm_sum0(d, (d - 1) // 2)


def count_I(d: int) -> int:
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and at least 3")
    return sum(count_norm_sum0(d, j) for j in range((d - 1) // 2 + 1))


# --- dynamic programming (small d) -------------------------------------------

def _dp(d: int, max_norm: int, weighted: bool = False) -> dict:
    """Map (sum, norm[, weighted sum mod d]) -> number of vectors."""
    states = {(0, 0, 0): 1}
    for k in range(1, d + 1):
        nxt: dict = {}
        for (s, nm, w), cnt in states.items():
            room = max_norm - nm
            for v in range(-room, room + 1):
                key = (s + v, nm + abs(v), (w + k * v) % d if weighted else 0)
                nxt[key] = nxt.get(key, 0) + cnt
        # bringing the sum back to zero costs at least |sum| more norm
        states = {key: c for key, c in nxt.items() if abs(key[0]) <= max_norm - key[1]}
    return states


def count_Sd_dp(d: int) -> int:
    states = _dp(d, d - 1)
    return sum(c for (s, nm, _), c in states.items() if s == 0 and nm == d - 1)


def count_I_dp(d: int) -> int:
    states = _dp(d, d - 1)
    return sum(c for (s, _, _), c in states.items() if s == 0)


def count_J_exact(d: int) -> int:
    if d > 25:
        raise ValueError("count_J_exact is limited to d <= 25")
    states = _dp(d, d - 1, weighted=True)
    return sum(c for (s, _, w), c in states.items() if s == 0 and w == 0)


def enumerate_sum_zero(d: int, max_norm: int):
    """Every vector of Z^d with sum 0 and L1 norm <= max_norm (generator).

    The first d - 1 coordinates range over everything within the norm
    budget; the last one is forced by the sum.
    """
    def rec(prefix, room, total):
        if len(prefix) == d - 1:
            if abs(total) <= room:
                yield tuple(prefix) + (-total,)
            return
        for v in range(-room, room + 1):
            prefix.append(v)
            yield from rec(prefix, room - abs(v), total + v)
            prefix.pop()
    yield from rec([], max_norm, 0)


def count_Sd_exhaustive(d: int) -> int:
    return sum(1 for v in enumerate_sum_zero(d, d - 1) if sum(map(abs, v)) == d - 1)


# --- the beta-restricted family -------------------------------------------------

def floor_beta_d(d: int) -> int:
    """floor(d / (2 + sqrt 2)) = floor((2d - sqrt(2 d^2)) / 2), exactly."""
    s = math.isqrt(2 * d * d)  # sqrt(2d^2) is irrational for d > 0
    return (2 * d - s - 1) // 2


def count_Sd_beta_formula(d: int, b: int | None = None) -> int:
    """C(d; b, b, d-2b) * C(h-1, b-1)^2 with h = (d-1)/2."""
    b = floor_beta_d(d) if b is None else b
    if b < 1:
        raise ValueError("need floor(beta d) >= 1")
    h = (d - 1) // 2
    tri = math.factorial(d) // (math.factorial(b) ** 2 * math.factorial(d - 2 * b))
    return tri * comb(h - 1, b - 1) ** 2


def count_Sd_beta_dp(d: int, b: int | None = None) -> int:
    """Vectors of S_d with exactly b positive and b negative coordinates, by DP
    over (positive count, negative count, positive mass, negative mass)."""
    b = floor_beta_d(d) if b is None else b
    h = (d - 1) // 2
    states = {(0, 0, 0, 0): 1}
    for _ in range(d):
        nxt: dict = {}
        for (p, q, P, Q), c in states.items():
            nxt[(p, q, P, Q)] = nxt.get((p, q, P, Q), 0) + c
            if p < b:
                for v in range(1, h - P + 1):
                    key = (p + 1, q, P + v, Q)
                    nxt[key] = nxt.get(key, 0) + c
            if q < b:
                for v in range(1, h - Q + 1):
                    key = (p, q + 1, P, Q + v)
                    nxt[key] = nxt.get(key, 0) + c
        states = nxt
    return states.get((b, b, h, h), 0)


# --- effective Stirling and entropy bounds ---------------------------------------

def robbins_ln_factorial(d: int) -> Interval:
    """Enclosure of ln d! from sqrt(2 pi d) (d/e)^d exp(1/(12d+1)) <= d!
    <= sqrt(2 pi d) (d/e)^d exp(1/(12d))."""
    base = (pi_interval() * 2 * d).ln() * Fraction(1, 2) + ln_interval(d) * d - d
    return Interval((base + Fraction(1, 12 * d + 1)).lo, (base + Fraction(1, 12 * d)).hi)


def rounded_parts(parts, d: int) -> list[int]:
    """d_k = floor(beta_k d) for k < K, d_K = d - sum of the others."""
    out = []
    for p in parts[:-1]:
        p = Interval._coerce(p)
        lo, hi = math.floor(p.lo * d), math.floor(p.hi * d)
        if lo != hi:
            raise ValueError("floor(beta_k d) is not determined by the enclosure")
        out.append(lo)
    out.append(d - sum(out))
    if min(out) <= 0:
        raise ValueError("rounded parts must be positive")
    return out


def rounded_multinomial(parts, d: int) -> int:
    ks = rounded_parts(parts, d)
    r = math.factorial(d)
    for k in ks:
        r //= math.factorial(k)
    return r


def entropy_lower_bound(parts, d: int, mu=None) -> Interval:
    """H(beta) - 2 K mu / d + (1 - K) ln(2 pi d) / (2d) + (1/13 - K/12) / d.

    Returned as an enclosure of that expression; its ``lo`` is a rigorous
    lower bound for (1/d) ln of the rounded multinomial.
    """
    parts = [Interval._coerce(p) for p in parts]
    K = len(parts)
    if mu is None:
        smallest = min(p.lo for p in parts) - Fraction(1, d)
        if smallest <= 0:
            raise ValueError("each part must exceed 1/d")
        mu = max(-ln_bounds(smallest)[0] - 1, Fraction(1))
    H = entropy(parts)
    log_term = (pi_interval() * 2 * d).ln()
    return (H - Fraction(2 * K) * mu / d + log_term * Fraction(1 - K, 2 * d)
            + (Fraction(1, 13) - Fraction(K, 12)) / d)


def multinomial_upper_bound(parts, d: int) -> Interval:
    """(1/d) ln of the rounded multinomial from Robbins applied to every
    factorial, including the prod (d_k/d)^(-1/2) factor."""
    ks = rounded_parts(parts, d)
    alphas = [Fraction(k, d) for k in ks]
    H = entropy(alphas)
    K = len(ks)
    val = (H * d + (pi_interval() * 2 * d).ln() * Fraction(1 - K, 2)
           - sum((ln_interval(a) * Fraction(1, 2) for a in alphas), Interval.point(0))
           + Fraction(1, 12 * d) - sum(Fraction(1, 12 * k + 1) for k in ks))
    return val / d


def entropy_bounds(parts, d: int) -> tuple[Fraction, Fraction]:
    """Rigorous (lower, upper) on (1/d) ln of the rounded multinomial."""
    return entropy_lower_bound(parts, d).lo, multinomial_upper_bound(parts, d).hi


def log_count_lower(count: int) -> Fraction:
    return ln_bounds(count)[0]
