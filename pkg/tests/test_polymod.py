import random

import pytest
from hypothesis import given, strategies as st

from ellperiods.errors import ParameterFailure
from ellperiods.polymod import (degree, divmod_poly, evaluate, find_root_mod_n, gcd, monic,
                                mulmod, powmod, trim)


def polys(n, max_deg=8):
    return st.lists(st.integers(0, n - 1), min_size=1, max_size=max_deg + 1)


@given(polys(1009), polys(1009))
def test_divmod_identity(a, b):
    n = 1009
    if not trim(b):
        return
    q, r = divmod_poly(a, b, n)
    assert degree(r) < degree(b)
    # check a = q b + r by evaluation at many points
    for x in range(20):
        assert evaluate(a, x, n) == (evaluate(q, x, n) * evaluate(b, x, n) + evaluate(r, x, n)) % n


@given(polys(101), polys(101), st.integers(0, 100))
def test_mulmod_at_roots_of_modulus(a, b, root):
    n = 101
    f = [(-root) % n, 1]
    assert mulmod(a, b, f, n) == trim([evaluate(a, root, n) * evaluate(b, root, n) % n])


def test_powmod_matches_fermat():
    n, f = 101, [3, 0, 1]  # x^2 + 3
    # x^101 = x * (x^2)^50 = x (-3)^50
    assert powmod([0, 1], n, f, n) == [0, pow(-3, 50, n)]


def test_gcd_and_monic():
    n = 1009
    a = mulmod([1, 1], [2, 1], [0] * 5 + [1], n)  # (x+1)(x+2) below degree 5
    b = mulmod([1, 1], [5, 1], [0] * 5 + [1], n)
    assert gcd(a, b, n) == [1, 1]
    assert monic([2, 4], 7) == [4, 1]


def test_find_root_examples():
    rng = random.Random(1)
    assert find_root_mod_n([1009 - 5, 1], 1009, rng) == 5
    H = [6, 1000, 1]  # x^2 - 3x + 6 modulo 1009 ... checked by evaluation
    try:
        r = find_root_mod_n(H, 1009, rng)
    except ParameterFailure:
        assert all(evaluate(H, x, 1009) for x in range(1009))
    else:
        assert evaluate(H, r, 1009) == 0
    with pytest.raises(ParameterFailure):
        find_root_mod_n([1, 0, 1], 1019, rng)  # -1 is a nonresidue mod 1019
    with pytest.raises(ParameterFailure):
        find_root_mod_n([5], 1009, rng)


@given(st.lists(st.integers(0, 4998), min_size=1, max_size=6), st.integers(0, 2**32))
def test_find_root_of_split_polynomial(roots, seed):
    n = 4999
    f = [1]
    for r in roots:
        f = mulmod(f, [(-r) % n, 1], [0] * 10 + [1], n)
    assert find_root_mod_n(f, n, random.Random(seed)) in set(roots)
