"""Dense univariate polynomials over Z/nZ, lowest degree first.

Just enough to find a root of a class polynomial modulo n: products and
powers modulo a fixed polynomial, monic gcd, and equal-degree splitting.
"""

from __future__ import annotations

import random

from .errors import ParameterFailure
from .residue import inv_mod


def trim(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: list[int]) -> int:
    return len(trim(p)) - 1


def evaluate(p: list[int], x: int, n: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % n
    return acc


def sub(a: list[int], b: list[int], n: int) -> list[int]:
    size = max(len(a), len(b))
    a = a + [0] * (size - len(a))
    b = b + [0] * (size - len(b))
    return trim([(x - y) % n for x, y in zip(a, b)])


def divmod_poly(a: list[int], b: list[int], n: int) -> tuple[list[int], list[int]]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim([c % n for c in a])
    inv = inv_mod(b[-1], n)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % n
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % n
        a = trim(a)
    return q, a


def mulmod(a: list[int], b: list[int], f: list[int], n: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return divmod_poly([c % n for c in prod], f, n)[1]


def powmod(base: list[int], e: int, f: list[int], n: int) -> list[int]:
    result = divmod_poly([1], f, n)[1]
    base = divmod_poly(base, f, n)[1]
    while e:
        if e & 1:
            result = mulmod(result, base, f, n)
        e >>= 1
        if e:
            base = mulmod(base, base, f, n)
    return result


def monic(p: list[int], n: int) -> list[int]:
    p = trim(p)
    inv = inv_mod(p[-1], n)
    return [c * inv % n for c in p]


def gcd(a: list[int], b: list[int], n: int) -> list[int]:
    """Monic gcd; a non-unit leading coefficient raises NonInvertible."""
    a, b = trim([c % n for c in a]), trim([c % n for c in b])
    while b:
        a, b = b, divmod_poly(a, b, n)[1]
    return monic(a, n) if a else []


def find_root_mod_n(H: list[int], n: int, rng: random.Random, budget: int = 64) -> int:
    """A root of H modulo n, verified by evaluation.

    gcd(H, X^n - X) isolates the linear factors (when n is prime), then
    random splitting with (X + a)^((n-1)/2) - 1 peels off a single root.
    Raises ParameterFailure when no root shows up.
    """
    H = trim([c % n for c in H])
    if len(H) < 2:
        raise ParameterFailure("constant polynomial has no root")
    if len(H) == 2:
        root = -H[0] * inv_mod(H[1], n) % n
    else:
        xn = powmod([0, 1], n, H, n)
        g = gcd(H, sub(xn, [0, 1], n), n)
        if len(g) < 2:
            raise ParameterFailure("no root modulo n")
        for _ in range(budget):
            if len(g) == 2:
                break
            a = rng.randrange(n)
            h = powmod([a, 1], (n - 1) // 2, g, n)
            h = gcd(g, sub(h, [1], n), n)
            if 1 < len(h) < len(g):
                g = h if len(h) <= len(g) - len(h) + 1 else divmod_poly(g, h, n)[0]
                g = monic(g, n)
        if len(g) != 2:
            raise ParameterFailure("root splitting did not converge")
        root = -g[0] % n
    if evaluate(H, root, n):
        raise ParameterFailure("root failed verification")
    return root
