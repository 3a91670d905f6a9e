import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from ringcollatz.errors import PreconditionError
from ringcollatz.rings import CharFactorization
from ringcollatz.valuation import (
    binom_mod,
    binom_valuation,
    digit_sum,
    divisibility_equivalence_check,
    floor_log,
    valuation_difference,
    threshold_constant,
    vp,
)


def naive_vp(p, n):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@pytest.mark.parametrize("p,n,want", [(2, 12, 2), (3, 7, 0), (5, 250, 3), (2, -8, 3)])
def test_vp(p, n, want):
    assert vp(p, n) == want


def test_vp_zero_is_undefined():
    with pytest.raises(PreconditionError):
        vp(2, 0)


@pytest.mark.parametrize("p,n,want", [(2, 5, 2), (3, 8, 4), (7, 0, 0), (10, 1999, 28)])
def test_digit_sum(p, n, want):
    assert digit_sum(p, n) == want


@pytest.mark.parametrize("p,n,m,want", [(2, 4, 2, 1), (3, 9, 1, 2), (2, 7, 3, 0)])
def test_binom_valuation_examples(p, n, m, want):
    assert binom_valuation(p, n, m) == want


def test_binom_valuation_rejects_bad_m():
    with pytest.raises(PreconditionError):
        binom_valuation(2, 3, 4)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 2000), st.data())
def test_kummer_matches_bigint(p, n, data):
    m = data.draw(st.integers(0, n))
    assert binom_valuation(p, n, m) == naive_vp(p, comb(n, m))


@pytest.mark.parametrize("p,a,n,want", [(2, 8, 2, 2), (3, 27, 9, 1)])
def test_difference_law_examples(p, a, n, want):
    assert valuation_difference(p, a, n) == want == naive_vp(p, comb(a, n))


def test_difference_law_precondition():
    with pytest.raises(PreconditionError):
        valuation_difference(2, 6, 4)
    with pytest.raises(PreconditionError):
        valuation_difference(2, 2, 4)


@pytest.mark.parametrize("p,n,want", [(2, 1, 0), (2, 7, 2), (2, 8, 3), (3, 26, 2), (3, 27, 3)])
def test_floor_log(p, n, want):
    assert floor_log(p, n) == want


@pytest.mark.parametrize("char,n,want", [(4, 1, 4), (12, 3, 72), (3, 2, 3), (2, 4, 8)])
def test_threshold_constant(char, n, want):
    assert threshold_constant(char, n) == want
    assert threshold_constant(CharFactorization.of(char), n) == want


def test_threshold_needs_positive_n():
    with pytest.raises(PreconditionError):
        threshold_constant(4, 0)


@pytest.mark.parametrize("char,n,k,want", [(4, 1, 4, (True, True)), (4, 1, 2, (False, False)),
                                           (2, 2, 4, (True, True))])
def test_equivalence_examples(char, n, k, want):
    assert divisibility_equivalence_check(char, n, k) == want


def test_equivalence_precondition():
    with pytest.raises(PreconditionError):
        divisibility_equivalence_check(4, 3, 2)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 7, 12])
def test_binom_mod(m):
    rng = random.Random(m)
    for _ in range(300):
        n = rng.randint(0, 300)
        k = rng.randint(-2, n + 2)
        want = comb(n, k) % m if 0 <= k <= n else 0
        assert binom_mod(n, k, m) == want
