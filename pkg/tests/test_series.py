import itertools
import random

import pytest

from ringcollatz.errors import PreconditionError, RingError, UnsupportedRing
from ringcollatz.parity import enumerate_cyclically_zero_dense, periodic_point_count, cycle_count
from ringcollatz.poly import Poly
from ringcollatz.rings import make_ring
from ringcollatz.series import (
    RationalSeries,
    periodic_point_census,
    parity_vector,
    periodic_from_cyclic_parity,
    periodic_from_parity,
    series_step,
    series_step_condensed,
    series_orbit,
)

S = RationalSeries.of


def test_step_examples():
    assert series_step(S("F2", [1], [1])) == S("F2", [])
    assert series_step(S("F2", [1])) == S("F2", [0, 1])
    g = series_step(S("F2", [1], [1, 1]))
    assert g.u == Poly.parse("F2", [0, 0, 1]) and g.v == Poly.parse("F2", [1, 1])


def test_condensed_examples():
    assert series_step_condensed(S("F2", [1])) == S("F2", [1])
    assert series_step_condensed(S("F2", [])) == S("F2", [])
    assert series_step_condensed(S("F3", [2])) == S("F3", [2])


def test_parity_examples():
    assert parity_vector(S("F2", [1]), 4) == (1, 0, 1, 0)
    assert parity_vector(S("F2", [1]), 3, "condensed") == (1, 1, 1)
    assert parity_vector(S("F3", []), 5) == (0,) * 5
    with pytest.raises(PreconditionError):
        parity_vector(S("F2", [1]), 0)


def test_construction_examples():
    assert periodic_from_parity("F2", (1,)) == S("F2", [1])
    assert periodic_from_parity("F2", (0,)) == S("F2", [])
    f = periodic_from_parity("F2", (1, 0))
    assert f == S("F2", [1], [1, 1])
    assert series_step_condensed(series_step_condensed(f)) == f != series_step_condensed(f)


def test_cyclic_construction_examples():
    f = periodic_from_cyclic_parity("F2", (1, 0, 0))
    assert f == S("F2", [1], [1, 1])
    assert series_orbit(f).cycle.__len__() == 3
    assert periodic_from_cyclic_parity("F2", (0, 0)) == S("F2", [])
    g = periodic_from_cyclic_parity("F3", (2, 0))
    assert g == S("F3", [2])
    assert len(series_orbit(g).cycle) == 2
    with pytest.raises(PreconditionError):
        periodic_from_cyclic_parity("F2", (1, 1))
    with pytest.raises(PreconditionError):
        periodic_from_cyclic_parity("F2", (1, 0, 1))


def test_orbit_examples():
    rep = series_orbit(S("F2", [1]))
    assert rep.preperiod == 0 and rep.cycle == (S("F2", [1]), S("F2", [0, 1]))
    assert rep.parity == (1, 0)
    rep = series_orbit(S("F2", [1], [1]))
    assert rep.preperiod == 1 and rep.cycle == (S("F2", []),)
    with pytest.raises(UnsupportedRing):
        series_orbit(S("Z", [1]))


def test_census_examples():
    c = periodic_point_census("F2", 3)
    assert c.size == 4 and len(c.cycles) == 1
    c = periodic_point_census("Z/4", 3)
    assert c.size == 10 and len(c.cycles) == 3
    for spec in ("F2", "Z/6"):
        c = periodic_point_census(spec, 1)
        assert c.size == 1 and c.cycles == ((S(spec, []),),)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_census_matches_ledger(q):
    for n in range(1, 8):
        c = periodic_point_census(f"Z/{q}", n)
        assert (c.size, len(c.cycles)) == (periodic_point_count(q, n), cycle_count(q, n))


def test_equality_across_representations():
    f = S("F2", [1], [1, 1])
    # Same series with numerator and denominator both multiplied by 1 + x.
    g = S("F2", [1, 1], [0, 0, 1])
    assert f == g and hash(f) == hash(g)
    assert f != S("F2", [1], [1])


def _truncated_T(coeffs, ring):
    """One step on a truncated coefficient list (last entry lost on division)."""
    c = list(coeffs)
    if ring.is_zero(c[0]):
        return c[1:]
    out = [ring.zero] + [ring.add(c[i], c[i - 1]) for i in range(1, len(c))]
    return out


@pytest.mark.parametrize("spec", ["F2", "F3", "Z/4", "Z/6", "F4"])
def test_truncation_soundness(spec):
    ring = make_ring(spec)
    rng = random.Random(spec)
    for _ in range(40):
        u = Poly(ring, tuple(ring.random_element(rng) for _ in range(rng.randint(0, 4))))
        v = Poly(ring, tuple(ring.random_element(rng) for _ in range(rng.randint(0, 3))))
        f = RationalSeries(ring, u, v)
        n = rng.randint(1, 30)
        m = 3 * (max(u.degree, 0) + max(v.degree, 0) + n)
        naive = list(f.coefficients(m))
        g = f
        for _ in range(n):
            naive = _truncated_T(naive, ring)
            g = series_step(g)
        assert tuple(naive) == g.coefficients(len(naive))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_round_trip(q):
    ring = make_ring(f"Z/{q}")
    for n in range(2, 7):
        for v in enumerate_cyclically_zero_dense(q, n):
            f = periodic_from_cyclic_parity(ring, v)
            g = f
            for _ in range(n):
                g = series_step(g)
            assert g == f and parity_vector(f, n) == v


@pytest.mark.parametrize("spec", ["F2", "F3", "Z/4"])
def test_condensed_vectors_give_distinct_series(spec):
    ring = make_ring(spec)
    elems = ring.elements()
    for n in range(1, 6):
        seen = {}
        for v in itertools.product(elems, repeat=n):
            f = periodic_from_parity(ring, v)
            assert parity_vector(f, n, "condensed") == v
            seen.setdefault(f, v)
        assert len(seen) == len(elems) ** n


def test_parse_and_json():
    f = RationalSeries.parse("F2", '{"u":[1],"v":[1,1]}')
    assert str(f) == '{"u":[1],"v":[1,1]}'
    assert RationalSeries.parse("F2", f.to_json()) == f
    assert RationalSeries.parse("F2", {"u": [1]}) == S("F2", [1])
    with pytest.raises(RingError):
        RationalSeries.parse("F2", "[1]")
    with pytest.raises(RingError):
        RationalSeries.parse("F2", {"ring": "F3", "u": [1]})
