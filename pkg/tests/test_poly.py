import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ringcollatz.errors import PreconditionError, RingError, UnsupportedRing
from ringcollatz.poly import (
    CharZeroClass,
    default_budget,
    Poly,
    all_polys,
    binomial_sums_nonzero,
    char_zero_classify,
    collatz_step,
    exact_period,
    is_periodic,
    iterate,
    one_plus_x_pow,
    orbit,
    period_divisor_bound,
    identity_plus_shift,
    preperiod_bound_check,
)
from ringcollatz.rings import make_ring


def P(ring, coeffs):
    return Poly.parse(ring, list(coeffs))


def naive_step(f):
    """(x+1) f - f0 or f / x, written with the generic polynomial operations."""
    r = f.ring
    if f.is_odd():
        x_plus_1 = Poly(r, (r.one, r.one))
        return x_plus_1 * f - Poly(r, (f.constant,))
    return f.shift_down()


def test_step_examples():
    assert collatz_step(P("F3", [1, 0, 1])) == P("F3", [0, 1, 1, 1])
    assert collatz_step(P("F2", [0, 1])) == P("F2", [1])
    assert collatz_step(P("Z/4", [0])) == P("Z/4", [])


def test_shift_map_examples():
    assert identity_plus_shift(P("F2", [1, 1])) == P("F2", [0, 1])
    assert identity_plus_shift(P("Z/6", [1, 2])) == P("Z/6", [3, 2])


@pytest.mark.parametrize("spec", ["F2", "F3", "Z/4", "Z/6", "F4", "F2[t]", "Z"])
def test_step_matches_naive_formula(spec):
    r = make_ring(spec)
    rng = random.Random(spec)
    for _ in range(300):
        f = Poly(r, tuple(r.random_element(rng) for _ in range(rng.randint(0, 6))))
        assert collatz_step(f) == naive_step(f)
        if f.is_odd():
            assert identity_plus_shift(f) == naive_step(f).shift_down()


@pytest.mark.parametrize("spec", ["F3", "Z/6", "Z"])
def test_shift_map_is_f_plus_shifted_f(spec):
    r = make_ring(spec)
    rng = random.Random(7)
    for _ in range(100):
        f = Poly(r, tuple(r.random_element(rng) for _ in range(5)))
        k = rng.randint(0, 6)
        lhs = f
        for _ in range(k):
            lhs = identity_plus_shift(lhs)
        rhs = Poly(r, ())
        g = f
        for j in range(k + 1):
            rhs = rhs + g.scale(r.from_int(comb(k, j)))
            g = g.shift_down()
        assert lhs == rhs


def test_degree_laws():
    r = make_ring("Z/6")
    for f in all_polys(r, 3):
        if f.is_zero():
            continue
        g = collatz_step(f)
        if f.is_odd():
            assert g.degree == f.degree + 1 and g.leading == f.leading and not g.is_odd()
        else:
            assert g.degree == f.degree - 1 or (f.degree == 0 and g.is_zero())


def test_orbit_examples():
    rep = orbit(P("F2", [1, 1]))
    assert rep.preperiod == 2 and rep.cycle == (P("F2", [0, 1]), P("F2", [1]))
    assert orbit(P("Z/4", [2])).cycle == (P("Z/4", [2]), P("Z/4", [0, 2]))
    assert orbit(P("Z/4", [2])).preperiod == 0


def test_integer_orbit_exhausts():
    rep = orbit(P("Z", [1, 1]), max_steps=100)
    assert not rep.found and rep.cycle == ()


def test_integer_shift_law():
    f = P("Z", [1, 1])
    for k in range(1, 20):
        assert iterate(f, 2 * k) == P("Z", [k + 1, 1])


def test_orbit_trace():
    rep = orbit(P("F2", [1, 1]), trace=True)
    assert rep.trace == (P("F2", [1, 1]), P("F2", [0, 0, 1]), P("F2", [0, 1]), P("F2", [1]))


@pytest.mark.parametrize("spec,coeffs,want", [
    ("F3", [1, 0, 1], True), ("F3", [1, 1], False), ("F2", [1, 1], False),
    ("Z/4", [2], True), ("F2", [], True), ("F2", [0, 1], True), ("F2", [0, 0, 1], False),
])
def test_is_periodic_examples(spec, coeffs, want):
    assert is_periodic(P(spec, coeffs)) is want


def test_is_periodic_char_zero_unsupported():
    with pytest.raises(UnsupportedRing):
        is_periodic(P("Z", [1, 1]))


def test_period_examples():
    f = P("F3", [1, 0, 1])
    assert exact_period(f) == 6 == period_divisor_bound(f)
    assert exact_period(P("Z/4", [2])) == 2
    assert exact_period(P("F2", [])) == 1
    with pytest.raises(PreconditionError):
        exact_period(P("F3", [1, 1]))
    with pytest.raises(PreconditionError):
        period_divisor_bound(P("F3", [0, 1]))


def test_infinite_char_p_ring():
    f = Poly(make_ring("F2[t]"), ((1, 1), (0, 1)))
    assert is_periodic(f)
    assert exact_period(f) == 4 == period_divisor_bound(f)


@pytest.mark.parametrize("coeffs,want", [
    ([], CharZeroClass.ON_ZERO_CYCLE), ([3], CharZeroClass.ON_CONSTANT_CYCLE),
    ([0, -2], CharZeroClass.ON_CONSTANT_CYCLE), ([1, 1], CharZeroClass.NOT_PERIODIC),
    ([0, 0, 1], CharZeroClass.NOT_PERIODIC),
])
def test_char_zero_classification(coeffs, want):
    assert char_zero_classify(P("Z", coeffs)) is want


def test_char_zero_constant_cycles():
    for a in (-3, 1, 5):
        f = P("Z", [a])
        assert iterate(f, 2) == f and exact_period(f) == 2


@pytest.mark.parametrize("spec,coeffs", [("F2", [1, 1, 0, 1]), ("F3", [2, 1, 1]), ("F2", [0, 1, 1])])
def test_preperiod_bound_examples(spec, coeffs):
    assert preperiod_bound_check(P(spec, coeffs))


def test_preperiod_bound_needs_field():
    with pytest.raises(UnsupportedRing):
        preperiod_bound_check(P("Z/4", [1, 1]))


@pytest.mark.parametrize("spec", ["F2", "F3", "Z/4", "Z/6", "F4"])
def test_cycles_alternate_parity(spec):
    for f in all_polys(spec, 2):
        rep = orbit(f)
        cyc = rep.cycle
        if len(cyc) > 1:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                assert a.is_odd() != b.is_odd()


def test_binomial_sums_detect_zero():
    f = P("F3", [1, 1])
    assert not binomial_sums_nonzero(f, 3)
    assert binomial_sums_nonzero(P("F3", [1, 0, 1]), 3)


def test_one_plus_x_pow():
    assert one_plus_x_pow("F2", 4) == P("F2", [1, 0, 0, 0, 1])
    assert one_plus_x_pow("Z", 3) == P("Z", [1, 3, 3, 1])


def test_poly_parse_and_format():
    f = Poly.parse("F4", "[[1,1],0,2]")
    assert str(f) == "[[1,1],[],[0,1]]"
    assert Poly.parse("F4", str(f)) == f
    assert Poly.parse("Z/4", "[1,2,0,0]").degree == 1
    with pytest.raises(RingError):
        Poly.parse("Z/4", "[1,")
    with pytest.raises(RingError):
        Poly.parse("Z/4", "{}")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=6))
def test_criterion_agrees_with_orbit_z6(coeffs):
    f = P("Z/6", coeffs)
    rep = orbit(f)
    assert rep.found
    assert is_periodic(f) == (rep.preperiod == 0)


@pytest.mark.parametrize("spec", ["F2", "F3", "Z/4", "Z/6", "F4", "F2[t]"])
def test_degree_bounds_random(spec):
    r = make_ring(spec)
    rng = random.Random(spec + "deg")
    for _ in range(10_000):
        f = Poly(r, tuple(r.random_element(rng) for _ in range(rng.randint(1, 8))))
        if f.is_zero():
            continue
        g = collatz_step(f)
        assert g.is_zero() or g.degree <= f.degree + 1
        h = collatz_step(g)
        assert h.is_zero() or h.degree <= f.degree


@pytest.mark.parametrize("spec", ["F3", "Z/4", "Z/6", "F4"])
def test_cycles_have_equal_odd_and_even_counts(spec):
    for f in all_polys(spec, 3):
        cyc = orbit(f).cycle
        if len(cyc) > 1:
            odd = sum(g.is_odd() for g in cyc)
            assert 2 * odd == len(cyc)


@pytest.mark.parametrize("spec", ["F2", "Z/6", "Z/12"])
def test_shift_map_powers_expand_binomially_up_to_50(spec):
    r = make_ring(spec)
    rng = random.Random(50)
    for _ in range(20):
        f = Poly(r, tuple(r.random_element(rng) for _ in range(rng.randint(1, 7))))
        g = f
        for k in range(51):
            expect = Poly(r, ())
            h = f
            for j in range(k + 1):
                expect = expect + h.scale(r.from_int(comb(k, j)))
                h = h.shift_down()
            assert g == expect
            g = identity_plus_shift(g)


@pytest.mark.parametrize("spec", ["Z/4", "Z/6", "F2[t]"])
def test_eventual_periodicity_within_default_budget(spec):
    r = make_ring(spec)
    rng = random.Random(spec + "ev")
    for _ in range(300):
        if spec == "F2[t]":
            coeffs = tuple(r.random_element(rng, degree=2) for _ in range(rng.randint(1, 5)))
        else:
            coeffs = tuple(r.random_element(rng) for _ in range(rng.randint(1, 5)))
        f = Poly(r, coeffs)
        rep = orbit(f)
        assert rep.found
        assert rep.preperiod + len(rep.cycle) <= default_budget(f)
