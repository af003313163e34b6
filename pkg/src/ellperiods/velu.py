"""Quotient isogeny E -> E/<T> for T of odd order d (Velu's formulae)."""

from __future__ import annotations

from .weierstrass import Curve, add, make_curve, multiples


class KernelTable:
    """The multiples kT (k = 0..d-1, with entry 0 the point at infinity)
    plus the sums w4, w6 over half the kernel."""

    def __init__(self, E: Curve, T, d: int):
        if d < 3 or d % 2 == 0:
            raise ValueError("d must be odd and at least 3")
        pts = multiples(E, T, d)
        if any(P is None for P in pts[:-1]) or pts[-1] is not None:
            raise ValueError(f"T does not have exact order {d}")
        self.E = E
        self.T = T
        self.d = d
        self.points = [None] + pts[:-1]
        self.xs = [0] + [P[0] for P in pts[:-1]]
        self.ys = [0] + [P[1] for P in pts[:-1]]
        n = E.n
        w4 = w6 = 0
        for k in range(1, (d - 1) // 2 + 1):
            x = self.xs[k]
            w4 += 6 * x * x + E.b2 * x + E.b4
            w6 += 10 * x**3 + 2 * E.b2 * x * x + 3 * E.b4 * x + E.b6
        self.w4 = w4 % n
        self.w6 = w6 % n

    def __getitem__(self, k: int):
        return self.points[k % self.d]

    def x(self, k: int) -> int:
        return self.xs[k % self.d]

    def y(self, k: int) -> int:
        return self.ys[k % self.d]


def velu_codomain(table: KernelTable) -> Curve:
    E = table.E
    a4 = E.a4 - 5 * table.w4
    a6 = E.a6 - E.b2 * table.w4 - 7 * table.w6
    return make_curve(E.a1, E.a2, E.a3, a4, a6, E.n)


def orbit(table: KernelTable, P) -> list:
    """[P, P + T, ..., P + (d-1)T], one addition per step."""
    E, T = table.E, table.T
    out = [P]
    for _ in range(table.d - 1):
        out.append(add(E, out[-1], T))
    return out


def velu_eval(table: KernelTable, P):
    """Image of P: x' = x + sum_k (x(P+kT) - x(kT)), likewise for y."""
    if P is None or P in table.points:
        return None
    n = table.E.n
    translates = orbit(table, P)
    if any(Q is None for Q in translates):
        return None
    x = sum(Q[0] for Q in translates) - sum(table.xs)
    y = sum(Q[1] for Q in translates) - sum(table.ys)
    return x % n, y % n
