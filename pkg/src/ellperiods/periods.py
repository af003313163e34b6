"""The ring of elliptic periods S in the basis theta_0, ..., theta_{d-1}.

Elements are coordinate lists of length d over Z/nZ.  Multiplication is
the closed-form tensor

    gamma = (a^2 iota_hat) * ((alpha - s alpha) . (beta - s beta))
            + u_N^{-1} * ((u_N * alpha) . (u_N * beta)
                         - (a^2 x_N) * ((alpha - s alpha) . (beta - s beta)))

where ``*`` is cyclic convolution, ``.`` the component-wise product and
``s`` the cyclic shift: five convolutions and two component-wise products.
"""

from __future__ import annotations

from .basis import TorsionContext, build_context, solve_iota_hat
from .convolution import conv, conv_invert, delta, pointwise, shift
from .errors import NonInvertible, NotInvertible, PoleError, RetryA, RetryM


class PeriodsRing:
    """Descriptor of S built from (E, T, d) and the sections A on E', M on E."""

    def __init__(self, ctx: TorsionContext, A, M, method: str | None = None):
        self.ctx = ctx
        self.n = n = ctx.n
        self.d = d = ctx.d
        self.A = A
        self.M = M
        self.method = method
        if A is None or not ctx.Ep.contains(A):
            raise RetryA("A must be an affine point of the codomain curve")
        self.e = ctx.trace_vector_e(A)
        try:
            self.e_inv = conv_invert(self.e, n)
        except NotInvertible as exc:
            raise RetryA("trace vector e is not invertible") from exc
        self.iota = ctx.trace_vector_iota(A)
        self.iota_hat = solve_iota_hat(self.e, self.iota, n, self.e_inv)
        if M is None or not ctx.E.contains(M):
            raise RetryM("M must be an affine point of the curve")
        try:
            self.uN, self.uN_inv, self.axN = ctx.vectors_uN_xN(M)
        except (NotInvertible, PoleError) as exc:
            raise RetryM(str(exc)) from exc
        a2 = ctx.a_norm * ctx.a_norm % n
        self.ai_hat = [a2 * v % n for v in self.iota_hat]
        if sum(self.e) % n != 1 % n:
            raise ArithmeticError("trace vector does not sum to 1")

    @property
    def N(self):
        from .velu import velu_eval
        return velu_eval(self.ctx.kernel, self.M)

    # --- elements ------------------------------------------------------------

    def one(self) -> list[int]:
        return [1 % self.n] * self.d

    def zero(self) -> list[int]:
        return [0] * self.d

    def theta(self, k: int) -> list[int]:
        return delta(self.d, k)

    def x_element(self) -> list[int]:
        return list(self.iota_hat)

    def sigma(self, a: list[int], k: int = 1) -> list[int]:
        return shift(a, k)

    def add(self, a, b):
        n = self.n
        return [(x + y) % n for x, y in zip(a, b)]

    def sub(self, a, b):
        n = self.n
        return [(x - y) % n for x, y in zip(a, b)]

    def scale(self, c: int, a):
        n = self.n
        return [c * x % n for x in a]

    def mul(self, a: list[int], b: list[int]) -> list[int]:
        n, m = self.n, self.method
        if len(a) != self.d or len(b) != self.d:
            raise ValueError("element length does not match the ring")
        da = [(x - y) % n for x, y in zip(a, shift(a))]
        db = da if b is a else [(x - y) % n for x, y in zip(b, shift(b))]
        p = pointwise(da, db, n)
        ua = conv(self.uN, a, n, m)
        ub = ua if b is a else conv(self.uN, b, n, m)
        inner = [(x - y) % n for x, y in zip(pointwise(ua, ub, n), conv(self.axN, p, n, m))]
        first = conv(self.ai_hat, p, n, m)
        second = conv(self.uN_inv, inner, n, m)
        return [(x + y) % n for x, y in zip(first, second)]

    def square(self, a):
        return self.mul(a, a)

    def pow(self, a: list[int], e: int) -> list[int]:
        """Left-to-right square and multiply; a^0 = one."""
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one()
        for bit in bin(e)[2:] if e else "":
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result

    def basis_index(self, a: list[int]) -> int | None:
        """k if a == theta_k, else None."""
        nz = [i for i, v in enumerate(a) if v % self.n]
        if len(nz) == 1 and a[nz[0]] % self.n == 1:
            return nz[0]
        return None

    def check_invariants(self) -> bool:
        n, d = self.n, self.d
        return (conv(self.e, self.e_inv, n) == delta(d)
                and conv(self.uN, self.uN_inv, n) == delta(d)
                and conv(self.e, self.iota_hat, n) == self.iota
                and sum(self.e) % n == 1 % n)


def build_ring(E, T, d: int, A, M, method: str | None = None,
               ctx: TorsionContext | None = None, normalization: str = "auto") -> PeriodsRing:
    """Assemble S; raises RetryA / RetryM on degenerate sections and
    NonInvertible when a zero divisor shows up."""
    if ctx is None:
        ctx = build_context(E, T, d, normalization)
    return PeriodsRing(ctx, A, M, method)


__all__ = ["PeriodsRing", "build_ring", "NonInvertible", "RetryA", "RetryM"]
