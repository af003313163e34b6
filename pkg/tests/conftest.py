import random

import pytest
from hypothesis import HealthCheck, settings

from ellperiods.residue import primes_up_to
from ellperiods.weierstrass import enumerate_points, make_curve, scalar_mul
from ellperiods.errors import NonInvertible

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_PRIMES = [p for p in primes_up_to(2000) if p > 100]


def random_curve(rng, p, long=True):
    while True:
        coeffs = [rng.randrange(p) if long or i >= 3 else 0 for i in range(5)]
        try:
            return make_curve(*coeffs, p)
        except NonInvertible:
            continue


def odd_prime_factors(m):
    out, q = [], 3
    while m % 2 == 0:
        m //= 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 2
    if m > 1:
        out.append(m)
    return out


def torsion_instance(rng, dmin=3, dmax=60, long=True, primes=None):
    """(E, T, d) over a random prime field, T of prime order d in
    [dmin, dmax]; the group order comes from counting points."""
    primes = primes or _PRIMES
    while True:
        p = rng.choice(primes)
        E = random_curve(rng, p, long)
        pts = enumerate_points(E)
        N = len(pts)
        ds = [q for q in odd_prime_factors(N) if dmin <= q <= dmax and q != p]
        if not ds:
            continue
        d = rng.choice(ds)
        for _ in range(20):
            T = scalar_mul(E, N // d, rng.choice(pts[1:]))
            if T is not None:
                return E, T, d, pts


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
