import math
import random

import pytest
from hypothesis import given, strategies as st

from ellperiods.basis import build_context
from ellperiods.criteria import (BOUND_NOT_MET, COMPOSITE, CONGRUENCE_FAILED, INCONCLUSIVE,
                                 PENDING, PRIME, PRIME_POWER, StrongContext, Verdict,
                                 berrizbeitia_check, check_bound_basic,
                                 check_bound_berrizbeitia, check_bound_strong,
                                 elliptic_aks_check, finalize, find_berrizbeitia_alpha,
                                 strong_elliptic_check)
from ellperiods.errors import NonInvertible, RetryA, RetryM
from ellperiods.fixtures import N1009, n1009_ring, z101sq_ring
from ellperiods.periods import PeriodsRing
from ellperiods.velu import velu_eval
from ellperiods.weierstrass import enumerate_points, scalar_mul

from conftest import random_curve


def test_basic_bound_examples():
    assert check_bound_basic(1009, 479)
    assert 2**239 >= 1009**22
    assert not check_bound_basic(4, 3)
    # dmin = 401 for n = 1009 meets 2^200 >= n^sqrt(401) exactly
    # (200^2 >= 401 log2(n)^2), but not the rounded-up exponent 21
    assert 200**2 >= 401 * math.log2(1009) ** 2 + 1
    assert not check_bound_basic(1009, 401)
    assert min(d for d in range(401, 1204, 2) if check_bound_basic(1009, d)) == 421


@given(st.integers(2, 10**30), st.integers(1, 3000))
def test_basic_bound_matches_float_where_clear(n, half):
    d = 2 * half + 1
    lhs = (d - 1) / 2
    rhs = math.ceil(math.sqrt(d)) * math.log2(n)
    if abs(lhs - rhs) > 1e-6 * max(lhs, rhs, 1):
        assert check_bound_basic(n, d) == (lhs >= rhs)


def test_strong_bound():
    assert check_bound_strong(2**32, 2001)
    assert not check_bound_strong(2**32, 1999)
    # 1.73738 * sqrt(2001) / ln 2 ~ 112.3: 2^112 passes, 2^113 fails
    assert check_bound_strong(2**112, 2001)
    assert not check_bound_strong(2**113, 2001)
    assert not check_bound_strong(2**150, 2001)


@given(st.integers(2, 2**200), st.integers(1000, 5000))
def test_strong_bound_matches_float_where_clear(n, half):
    d = 2 * half + 1
    lhs, rhs = 1.73738 * d, math.sqrt(d) * math.log(n)
    if abs(lhs - rhs) > 1e-9 * rhs:
        assert check_bound_strong(n, d) == (lhs >= rhs)


def test_berrizbeitia_bound():
    assert check_bound_berrizbeitia(727, 121)
    assert 2**121 > 727**11
    assert not check_bound_berrizbeitia(13, 3)


def test_verdict_checks_factor():
    Verdict.composite(15, 3)
    for bad in (1, 15, 4, None):
        with pytest.raises(ValueError):
            Verdict(COMPOSITE, 15, factor=bad)


def test_from_noninvertible():
    v = Verdict.from_noninvertible(15, NonInvertible(5, 15), "test")
    assert v.kind == COMPOSITE and v.factor == 5
    assert Verdict.from_noninvertible(15, NonInvertible(15, 15)).kind == INCONCLUSIVE


def test_published_check_1009():
    ring = n1009_ring()
    v, m = elliptic_aks_check(ring, 1009)
    assert m == N1009["m"] == 91 and math.gcd(91, 479) == 1
    assert v.kind == PENDING
    assert finalize(v, 1009).kind == PRIME


def test_m_shift_matches_literal_criterion():
    """Rebuilding with T' = mT turns theta_0^n = theta_m into m' = 1."""
    ring = n1009_ring()
    _, m = elliptic_aks_check(ring, 1009)
    ctx = ring.ctx
    ctx2 = build_context(ctx.E, ctx.kernel[m], ctx.d)
    ring2 = PeriodsRing(ctx2, ring.A, ring.M)
    v2, m2 = elliptic_aks_check(ring2, 1009)
    assert v2.kind == PENDING and m2 == 1


def test_corrupted_tensor_fails():
    ring = n1009_ring()
    ring.ai_hat[0] = (ring.ai_hat[0] + 1) % ring.n
    v, m = elliptic_aks_check(ring, 1009)
    assert v.kind == CONGRUENCE_FAILED and m is None


def test_bound_not_met_is_reported():
    v, m = elliptic_aks_check(z101sq_ring(), 101**2)
    assert v.kind == BOUND_NOT_MET and m is None


def test_square_modulus_is_not_certified():
    ring = z101sq_ring()
    try:
        v, _ = elliptic_aks_check(ring, 101**2, check_bound=False)
    except NonInvertible as exc:
        assert exc.factor == 101
        return
    assert v.kind in (CONGRUENCE_FAILED, PENDING)
    # even a pending result can only become a prime power
    assert finalize(v, 101**2).kind in (CONGRUENCE_FAILED, PRIME_POWER)


def test_finalize():
    assert finalize(Verdict(PENDING, 1009), 1009).kind == PRIME
    pp = finalize(Verdict(PENDING, 10201), 10201)
    assert (pp.kind, pp.base, pp.exponent) == (PRIME_POWER, 101, 2)
    c = Verdict.composite(15, 3)
    assert finalize(c, 15) is c


def small_prime_ring(p, d, seed=0, moving=False):
    """A ring over F_p; with ``moving`` A lies outside the image of E(F_p),
    so Frobenius permutes its fibre without fixed points."""
    rng = random.Random(seed)
    while True:
        E = random_curve(rng, p)
        pts = enumerate_points(E)
        if len(pts) % d:
            continue
        T = scalar_mul(E, len(pts) // d, rng.choice(pts[1:]))
        if T is None:
            continue
        try:
            ctx = build_context(E, T, d)
        except NonInvertible:
            continue
        if moving:
            image = {velu_eval(ctx.kernel, P) for P in pts}
            outside = [A for A in enumerate_points(ctx.Ep) if A not in image]
            if not outside:
                continue
        for _ in range(20):
            A = rng.choice(outside) if moving else velu_eval(ctx.kernel, rng.choice(pts))
            try:
                return PeriodsRing(ctx, A, rng.choice(pts))
            except (RetryA, RetryM):
                continue


def test_strong_mechanics_on_small_ring():
    for seed in range(6):
        ring = small_prime_ring(101, 7, seed, moving=seed % 2 == 0)
        strong = StrongContext(ring)
        assert strong.half == 4 and strong.That == ring.ctx.kernel[4]
        assert scalar_mul(ring.ctx.E, 2, strong.That) == ring.ctx.T
        vb, mb = elliptic_aks_check(ring, 101, check_bound=False)
        vs, ms = strong_elliptic_check(ring, 101, strong, force_small_d=True)
        assert (vb.kind == PENDING) == (vs.kind == INCONCLUSIVE)
        if mb is not None:
            assert ms == 2 * mb % 7
        # a rational fibre gives m = 0, a moving one an m prime to d
        assert (mb is not None) == (seed % 2 == 0)
        # a small-d run never proves anything
        assert finalize(vs, 101).kind != PRIME


def test_strong_refuses_small_d_without_force():
    v, m = strong_elliptic_check(n1009_ring(), 1009)
    assert v.kind == BOUND_NOT_MET and m is None


def test_theta_hat_shape():
    ring = z101sq_ring()
    s = StrongContext(ring)
    t1 = s.theta_hat(ring, 1)
    k = (ring.d + 1) // 2
    assert (t1[k] - (1 - s.eta)) % ring.n == 0
    assert all((t1[j] + s.eta) % ring.n == 0 for j in range(ring.d) if j != k)


def poly_oracle(n, d, alpha):
    """(x - 1)^n in Z/n[x]/(x^d - alpha) by repeated multiplication."""
    def mul(a, b):
        out = [0] * d
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                k = i + j
                out[k % d] += u * v * (alpha if k >= d else 1)
        return [v % n for v in out]
    acc, base = [1] + [0] * (d - 1), [n - 1, 1] + [0] * (d - 2)
    for _ in range(n):
        acc = mul(acc, base)
    return acc


def test_berrizbeitia_small():
    zeta = pow(2, 4, 13)
    assert zeta == 3 and pow(3, 3, 13) == 1
    assert poly_oracle(13, 3, 2) == [12, 3, 0]
    v = berrizbeitia_check(13, 3, 2)
    assert v.kind == BOUND_NOT_MET


def test_berrizbeitia_727():
    alpha = find_berrizbeitia_alpha(727, 121)
    # exhaustive oracle for the exact-order condition
    want = next(a for a in range(2, 727)
                if len({pow(a, 6 * k, 727) for k in range(121)}) == 121)
    assert alpha == want
    v = berrizbeitia_check(727, 121, alpha)
    assert v.kind == PENDING
    assert finalize(v, 727).kind == PRIME


def test_berrizbeitia_15_never_certified():
    for alpha in range(15):
        v = finalize(berrizbeitia_check(15, 7, alpha), 15)
        assert v.kind not in (PRIME, PRIME_POWER)
        if v.kind == COMPOSITE:
            assert v.factor in (3, 5)


def test_berrizbeitia_rejects_bad_d():
    assert berrizbeitia_check(727, 7, 2).kind == INCONCLUSIVE
    assert find_berrizbeitia_alpha(727, 7) is None
