"""Elliptic normal basis data for a point T of odd order d.

Notation follows the usual conventions for this construction:
Gamma(A, B, C) is the slope-like quantity attached to three points,
u_{A,B} is the degree 2 function with simple poles at A and B, and
u_k = a * u_{kT,(k+1)T} + b with a, b normalised so that sum u_k = 1.
The context caches x(kT), y(kT), Gamma_{k,k+1} and the traces
c_k = Tr(u_{O,kT}).
"""

from __future__ import annotations

from .convolution import conv, conv_invert
from .errors import NonInvertible, PoleError
from .residue import inv_mod
from .velu import KernelTable, orbit, velu_codomain
from .weierstrass import Curve, add, neg, sub


def gamma(E: Curve, A, B, C) -> int:
    """(y(C-A) - y(A-B)) / (x(C-A) - x(A-B))."""
    P = sub(E, C, A)
    Q = sub(E, A, B)
    if P is None or Q is None:
        raise PoleError("Gamma needs C - A and A - B affine")
    if P == Q:
        # C - A = A - B: the chord becomes the tangent there
        return tangent_slope(E, P)
    return (P[1] - Q[1]) * inv_mod(P[0] - Q[0], E.n) % E.n


def tangent_slope(E: Curve, P) -> int:
    x, y = P
    return (3 * x * x + 2 * E.a2 * x + E.a4 - E.a1 * y) * inv_mod(
        2 * y + E.a1 * x + E.a3, E.n) % E.n


def u_O(E: Curve, Q, P) -> int:
    """u_{O,Q}(P) = (y - y(-Q)) / (x - x(Q)); poles at O and Q."""
    if P is None or P == Q:
        raise PoleError("evaluation at a pole of u_{O,Q}")
    mQ = neg(E, Q)
    if P[0] == Q[0]:
        if P == mQ:
            # removable: the chord through -Q degenerates to the tangent
            return tangent_slope(E, P)
    return (P[1] - mQ[1]) * inv_mod(P[0] - Q[0], E.n) % E.n


class TorsionContext:
    """Everything that depends on (E, T, d) but not on A or M."""

    def __init__(self, E: Curve, T, d: int, normalization: str = "auto"):
        n = E.n
        if d % 2 == 0 or d % n == 0:
            raise ValueError("d must be odd and prime to n")
        self.E = E
        self.T = T
        self.d = d
        self.n = n
        self.kernel = KernelTable(E, T, d)
        self.Ep = velu_codomain(self.kernel)
        xs, ys = self.kernel.xs, self.kernel.ys
        a1, a3 = E.a1, E.a3
        # Gamma_{k,l} = (y_l + y_k + a1 x_k + a3) / (x_l - x_k)
        self.gammas = [0] * d  # gammas[k] = Gamma_{k,k+1}, k = 1..d-2
        for k in range(1, d - 1):
            self.gammas[k] = self.gamma_kl(k, k + 1)
        c = [0] * d
        c[1] = (sum(self.gammas) - a1) % n
        for k in range(1, d - 1):
            c[k + 1] = (c[k] + c[1] - d * self.gammas[k]) % n
        self.c = c
        self.sum_x = sum(xs) % n
        self.sum_y = sum(ys) % n
        self.sum_y_a1x = (self.sum_y + a1 * self.sum_x) % n
        self._choose_normalization(normalization)

    def gamma_kl(self, k: int, l: int) -> int:
        xs, ys, E = self.kernel.xs, self.kernel.ys, self.E
        k %= self.d
        l %= self.d
        if (k + l) % self.d == 0:
            return tangent_slope(E, self.kernel[l])
        return (ys[l] + ys[k] + E.a1 * xs[k] + E.a3) * inv_mod(xs[l] - xs[k], self.n) % self.n

    def _choose_normalization(self, mode: str):
        n, c1, d = self.n, self.c[1], self.d
        if mode in ("auto", "inverse"):
            try:
                self.a_norm, self.b_norm = inv_mod(c1, n), 0
                self.normalization = "inverse"
                return
            except NonInvertible as exc:
                if mode == "inverse" or exc.is_witness:
                    raise
        self.a_norm = 1
        self.b_norm = (1 - c1) * inv_mod(d, n) % n
        self.normalization = "affine"

    # --- trace vectors -----------------------------------------------------

    def trace_U0U(self, xA: int) -> list[int]:
        """Tr(U_0 U_k) at a point of E' with abscissa xA, k in Z/dZ."""
        d, n, E = self.d, self.n, self.E
        xs, c, g = self.kernel.xs, self.c, self.gammas
        c1 = c[1]
        g1 = [0, 0] + [self.gamma_kl(1, k) for k in range(2, d)]  # Gamma_{1,k}
        tr = [0] * d
        for k in range(2, d - 1):
            tr[k] = (g1[k + 1] * (c[k + 1] - c1) - g1[k] * (c[k] - c1)
                     + d * (xs[k + 1] - xs[k]) + g[k] * c1) % n
        tr[0] = (2 * xA + d * (xs[1] + E.a2) - E.a1 * c1 + 2 * self.sum_x) % n
        g1m1 = g1[d - 1]
        tr[1] = tr[d - 1] = (-xA + 2 * g1m1 * c1 + d * (E.a1 * g1m1 - E.a2)
                             - 2 * d * xs[1] - self.sum_x) % n
        return tr

    def trace_vector_e(self, A) -> list[int]:
        if A is None:
            raise PoleError("A must be affine")
        a, b, n = self.a_norm, self.b_norm, self.n
        const = (b * b * self.d + 2 * a * b * self.c[1]) % n
        return [(a * a * t + const) % n for t in self.trace_U0U(A[0])]

    def trace_xU(self, A) -> list[int]:
        d, n, E = self.d, self.n, self.E
        xs, ys, c, g = self.kernel.xs, self.kernel.ys, self.c, self.gammas
        xA, yA = A
        tr = [0] * d
        base = (xA + self.sum_x) % n
        for k in range(1, d - 1):
            tr[k] = (g[k] * base + xs[k + 1] * c[k + 1] - xs[k] * c[k]
                     + d * (ys[k + 1] - ys[k] + E.a1 * (xs[k + 1] - xs[k]))) % n
        tr[0] = (yA + xs[1] * c[1] + d * (ys[1] + E.a1 * xs[1] + E.a3) + self.sum_y) % n
        tr[d - 1] = (-yA - E.a1 * xA + xs[1] * c[1] + d * (ys[1] + E.a1 * xs[1])
                     - self.sum_y_a1x) % n
        return tr

    def trace_vector_iota(self, A) -> list[int]:
        if A is None:
            raise PoleError("A must be affine")
        a, b, n = self.a_norm, self.b_norm, self.n
        shift = b * (A[0] + self.sum_x) % n
        return [(a * t + shift) % n for t in self.trace_xU(A)]

    # --- evaluation of u_0 ---------------------------------------------------

    def eval_u0(self, P) -> int:
        """u_0(P) = a * u_{O,T}(P) + b; poles at O and T."""
        return (self.a_norm * u_O(self.E, self.T, P) + self.b_norm) % self.n

    def eval_u(self, k: int, P) -> int:
        """u_k(P) = u_0(P - kT)."""
        return self.eval_u0(sub(self.E, P, self.kernel[k]))

    def vectors_uN_xN(self, M):
        """u_N = (u_0(M + kT))_k, its convolution inverse, and a^2 x_N."""
        n = self.n
        pts = orbit(self.kernel, M)
        if any(P is None for P in pts):
            raise PoleError("M lies in the kernel")
        uN = [self.eval_u0(P) for P in pts]
        uN_inv = conv_invert(uN, n)
        a2 = self.a_norm * self.a_norm % n
        axN = [a2 * P[0] % n for P in pts]
        return uN, uN_inv, axN


def build_context(E: Curve, T, d: int, normalization: str = "auto") -> TorsionContext:
    return TorsionContext(E, T, d, normalization)


def solve_iota_hat(e: list[int], iota: list[int], n: int, e_inv: list[int] | None = None) -> list[int]:
    """iota_hat = e^{-1} * iota, checked by reconvolution."""
    if e_inv is None:
        e_inv = conv_invert(e, n)
    hat = conv(e_inv, iota, n)
    if conv(e, hat, n) != [v % n for v in iota]:
        raise ArithmeticError("deconvolution check failed")
    return hat
