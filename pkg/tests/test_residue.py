import math
import random

import pytest
from hypothesis import given, strategies as st

from ellperiods.errors import NonInvertible, NoSolution, NoSquareRoot
from ellperiods.residue import (Residue, ResidueRing, cornacchia, factorize, inv_mod,
                                is_perfect_power, is_probable_prime, jacobi, pow_mod,
                                primes_up_to, small_divisor_search, sqrt_mod, sqrt_mod_int,
                                try_invert)


def test_ring_ops_small():
    R = ResidueRing(7)
    assert R(5) + R(4) == R(2)
    assert (R(3) * R(5)).value == 1
    assert (-R(3)).value == 4
    assert (R(2) - R(5)).value == 4


def test_ring_mismatch_is_an_error():
    with pytest.raises(ValueError):
        ResidueRing(7)(1) + ResidueRing(11)(1)


def test_published_inverse_of_c1():
    R = ResidueRing(101**2)
    assert R(3534) * R(6665) == R(1)
    assert try_invert(R(3534)).value == 6665


def test_invert_small():
    assert try_invert(ResidueRing(7)(3)).value == 5
    with pytest.raises(NonInvertible) as exc:
        try_invert(ResidueRing(10)(4))
    assert exc.value.factor == 2 and exc.value.is_witness


def test_invert_zero_is_not_a_witness():
    with pytest.raises(NonInvertible) as exc:
        inv_mod(0, 15)
    assert exc.value.factor == 15 and not exc.value.is_witness


@given(st.integers(2, 10**6), st.integers(0, 10**6))
def test_invertibility_matches_gcd(n, a):
    if math.gcd(a, n) == 1:
        assert a * inv_mod(a, n) % n == 1 % n
    else:
        with pytest.raises(NonInvertible) as exc:
            inv_mod(a, n)
        assert exc.value.factor == math.gcd(a % n, n) or exc.value.factor == n


def test_pow_mod():
    assert pow_mod(ResidueRing(1000)(2), 10).value == 24
    assert pow_mod(ResidueRing(7)(0), 0).value == 1
    # Fermat by repeated multiplication
    R = ResidueRing(1009)
    acc = R(1)
    for _ in range(1008):
        acc = acc * R(2)
    assert acc == pow_mod(R(2), 1008) == R(1)


def test_sqrt_small():
    R = ResidueRing(1009)
    assert sqrt_mod(R(4)).value in (2, 1007)


def test_sqrt_against_exhaustive_search():
    n = 1009
    roots = [r for r in range(n) if r * r % n == (-148) % n]
    assert sqrt_mod_int(-148, n) in roots
    nonres = next(a for a in range(2, n) if all(r * r % n != a for r in range(n)))
    with pytest.raises(NoSquareRoot):
        sqrt_mod_int(nonres, n)


@given(st.sampled_from(primes_up_to(5000)[1:]), st.integers(1, 10**9))
def test_sqrt_roundtrip(p, a):
    sq = a * a % p
    r = sqrt_mod_int(sq, p, random.Random(a))
    assert r * r % p == sq


def test_sqrt_composite_modulus_is_checked():
    # 21: Euler's criterion or the final squaring must reject nonsense
    for a in range(1, 21):
        try:
            r = sqrt_mod_int(a, 21)
        except (NoSquareRoot, NonInvertible):
            continue
        assert r * r % 21 == a


def test_cornacchia_published():
    assert cornacchia(148, 1009) == (52, 3)
    assert cornacchia(3, 1) == (1, 1)


def test_cornacchia_against_brute_force():
    for disc, n in [(7, 11), (7, 2), (11, 47), (8, 17), (20, 41), (15, 1009)]:
        brute = {(t, v) for t in range(1, 2 * math.isqrt(n) + 2)
                 for v in range(1, 2 * math.isqrt(n) + 2) if t * t + disc * v * v == 4 * n}
        try:
            t, v = cornacchia(disc, n)
        except NoSolution:
            assert not brute
        else:
            assert (t, v) in brute


@given(st.sampled_from([p for p in primes_up_to(3000) if p > 50]), st.sampled_from([7, 8, 11, 15, 19, 20, 23, 24]))
def test_cornacchia_postcondition(n, disc):
    try:
        t, v = cornacchia(disc, n)
    except (NoSolution, NoSquareRoot):
        return
    assert t > 0 and v > 0 and t * t + disc * v * v == 4 * n


def test_small_divisor_search():
    assert small_divisor_search(958, 401, 1203) == 479
    assert small_divisor_search(30, 31, 40) is None
    assert small_divisor_search(2 * 3 * 11**2, 100, 150) == 121


@given(st.integers(1, 10**7), st.integers(1, 300), st.integers(0, 3000))
def test_small_divisor_search_against_trial_division(m, lo, width):
    hi = lo + width
    want = next((d for d in range(lo, hi + 1)
                 if d % 2 and m % d == 0 and math.gcd(d, m // d) == 1), None)
    assert small_divisor_search(m, lo, hi) == want


def test_factorize_roundtrip():
    for m in (1, 2, 958, 1009 * 1013, 2**10 * 3**5, 999983 * 1000003):
        f = factorize(m)
        assert math.prod(p**e for p, e in f.items()) == m
        assert all(is_probable_prime(p) for p in f)


def test_jacobi_matches_euler():
    p = 1009
    for a in range(1, 60):
        assert jacobi(a, p) == (1 if pow(a, (p - 1) // 2, p) == 1 else -1)


def test_perfect_power():
    assert is_perfect_power(10201) == (101, 2)
    assert is_perfect_power(1009) is None
    assert is_perfect_power(16) == (2, 4)


@given(st.integers(2, 100), st.integers(2, 5))
def test_perfect_power_property(b, k):
    base, e = is_perfect_power(b**k)
    assert base**e == b**k and e >= 2


def test_probable_prime_against_sieve():
    sieve = set(primes_up_to(20000))
    assert all(is_probable_prime(n) == (n in sieve) for n in range(20000))
