"""Collatz dynamics on power series of the form u * (1 + x v)^-1.

Over a finite ring these rational series are exactly the eventually
periodic elements of R[[x]], so they are the only series represented.  A
step of either map keeps the denominator 1 + x v and only rewrites the
numerator u, which stays of bounded degree along an orbit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cycles import OrbitReport, find_cycle
from .errors import BudgetExceeded, PreconditionError, RingError, UnsupportedRing
from .parity import condense, enumerate_cyclically_zero_dense, is_cyclically_zero_dense
from .poly import Poly, one_plus_x_pow
from .rings import Ring, make_ring

HASH_TERMS = 8
DEFAULT_SERIES_BUDGET = 1_000_000


@dataclass(frozen=True, eq=False)
class RationalSeries:
    """The power series u / (1 + x v).

    Equality is equality in R[[x]]: u1 (1 + x v2) == u2 (1 + x v1), which
    needs no common-factor normalization.
    """

    ring: Ring
    u: Poly
    v: Poly

    @classmethod
    def of(cls, ring, u, v=()) -> "RationalSeries":
        ring = make_ring(ring)
        u = u if isinstance(u, Poly) else Poly(ring, tuple(u))
        v = v if isinstance(v, Poly) else Poly(ring, tuple(v))
        return cls(ring, u, v)

    @classmethod
    def parse(cls, ring, obj) -> "RationalSeries":
        """From ``{"u": [...], "v": [...]}`` (JSON text or dict)."""
        ring = make_ring(ring)
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise RingError(f"cannot parse series {obj!r}: {exc}") from None
        if not isinstance(obj, dict) or "u" not in obj:
            raise RingError("series must be an object with keys 'u' and optional 'v'")
        if "ring" in obj and make_ring(obj["ring"]) != ring:
            raise RingError(f"series ring {obj['ring']} does not match {ring.spec}")
        return cls(ring, Poly.parse(ring, obj["u"]), Poly.parse(ring, obj.get("v", [])))

    def to_json(self) -> dict:
        return {"ring": self.ring.spec, "u": self.u.to_json(), "v": self.v.to_json()}

    def __str__(self):
        return json.dumps({"u": self.u.to_json(), "v": self.v.to_json()}, separators=(",", ":"))

    @property
    def denominator(self) -> Poly:
        return Poly(self.ring, (self.ring.one,)) + self.v.shift_up()

    @property
    def constant(self):
        return self.u.constant

    def is_odd(self) -> bool:
        return not self.ring.is_zero(self.u.constant)

    def coefficients(self, m: int) -> tuple:
        """First ``m`` power-series coefficients."""
        r = self.ring
        u, d = self.u.coeffs, self.denominator.coeffs
        out = []
        for i in range(m):
            c = u[i] if i < len(u) else r.zero
            for k in range(1, min(i, len(d) - 1) + 1):
                c = r.sub(c, r.mul(d[k], out[i - k]))
            out.append(c)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        if self.v == other.v:
            return self.u == other.u
        return self.u * other.denominator == other.u * self.denominator

    def __hash__(self):
        return hash(self.coefficients(HASH_TERMS))


def series_step(f: RationalSeries) -> RationalSeries:
    """(x+1) f - f0 for odd f, f / x for even f."""
    u = f.u
    if f.is_odd():
        u = u + u.shift_up() - f.denominator.scale(u.constant)
    else:
        u = u.shift_down()
    return RationalSeries(f.ring, u, f.v)


def series_step_condensed(f: RationalSeries) -> RationalSeries:
    """((x+1) f - f0) / x for odd f, f / x for even f."""
    u = f.u
    if f.is_odd():
        u = u + u.shift_up() - f.denominator.scale(u.constant)
    return RationalSeries(f.ring, u.shift_down(), f.v)


def parity_vector(f: RationalSeries, n: int, which: str = "full") -> tuple:
    """Constant terms of the first ``n`` iterates under the full or condensed map."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    step = {"full": series_step, "condensed": series_step_condensed}.get(which)
    if step is None:
        raise ValueError(f"unknown map {which!r}")
    out = []
    for _ in range(n):
        out.append(f.constant)
        f = step(f)
    return tuple(out)


def periodic_from_parity(ring, vec) -> RationalSeries:
    """The unique f with condensed-map period dividing n and parity ``vec``.

    f = [sum_j v_j x^j (x+1)^(s_j)] / [(x+1)^s - x^n], where s counts the
    nonzero entries and s_j those after position j.
    """
    ring = make_ring(ring)
    n = len(vec)
    if n < 1:
        raise PreconditionError("empty parity vector")
    nz = [not ring.is_zero(a) for a in vec]
    s = sum(nz)
    powers = [one_plus_x_pow(ring, k) for k in range(s + 1)]
    num = Poly(ring, ())
    after = s
    for j, a in enumerate(vec):
        after -= nz[j]
        if nz[j]:
            num = num + powers[after].shift_up(j).scale(a)
    den = powers[s] - Poly.monomial(ring, ring.one, n)
    assert den.constant == ring.one
    v = Poly(ring, den.coeffs[1:])
    return RationalSeries(ring, num, v)


def periodic_from_cyclic_parity(ring, vec) -> RationalSeries:
    """The unique f with T^n(f) = f and full parity vector ``vec``."""
    ring = make_ring(ring)
    vec = tuple(vec)
    if not vec or not is_cyclically_zero_dense(vec):
        raise PreconditionError(f"{vec} is not cyclically zero-dense")
    if len(vec) == 1:
        return RationalSeries(ring, Poly(ring, ()), Poly(ring, ()))
    if ring.is_zero(vec[-1]):
        return periodic_from_parity(ring, condense(vec))
    # Rotate so the window ends in the forced 0, build there, step once back.
    g = periodic_from_parity(ring, condense(vec[-1:] + vec[:-1]))
    return series_step(g)


@dataclass(frozen=True)
class SeriesOrbitReport(OrbitReport):
    parity: tuple = ()


def series_orbit(f: RationalSeries, budget: int = DEFAULT_SERIES_BUDGET) -> SeriesOrbitReport:
    if not f.ring.is_finite:
        raise UnsupportedRing("series orbits are guaranteed to close only over finite rings")
    rep = find_cycle(series_step, f, budget)
    if not rep.found:
        raise BudgetExceeded(f"series orbit did not close within {budget} steps")
    return SeriesOrbitReport(rep.preperiod, rep.cycle, rep.steps_taken, rep.trace,
                             tuple(g.constant for g in rep.cycle))


@dataclass(frozen=True)
class PeriodicPointCensus:
    """Points with T^n(f) = f, and the cycles among them of exact length n."""

    n: int
    size: int
    cycles: tuple[tuple[RationalSeries, ...], ...]


def periodic_point_census(ring, n: int, budget: int = 2_000_000) -> PeriodicPointCensus:
    """Build every f with T^n(f) = f from its parity vector and group into cycles.

    Periods are found by iterating the map on the constructed series, and
    cycle membership by series equality, not by parity bookkeeping.
    """
    ring = make_ring(ring)
    if not ring.is_finite:
        raise UnsupportedRing("census needs a finite ring")
    if n < 1:
        raise PreconditionError("n must be >= 1")
    elems = ring.elements()
    assert ring.is_zero(elems[0])
    if n == 1:
        return PeriodicPointCensus(1, 1, (
            (RationalSeries(ring, Poly(ring, ()), Poly(ring, ())),),))
    vectors = enumerate_cyclically_zero_dense(ring.cardinality, n, budget=budget)
    points: dict[RationalSeries, int | None] = {}
    cycles = []
    for sym in vectors:
        f = periodic_from_cyclic_parity(ring, tuple(elems[s] for s in sym))
        if f in points:
            continue
        members = [f]
        g = series_step(f)
        while g != f:
            members.append(g)
            if len(members) > n:
                raise AssertionError(f"constructed point {f} is not T^{n}-periodic")
            g = series_step(g)
        if n % len(members):
            raise AssertionError(f"period {len(members)} does not divide {n}")
        for m in members:
            points[m] = len(members)
        if len(members) == n:
            cycles.append(tuple(members))
    size = len(vectors)
    if len(points) != size:
        raise AssertionError(f"{len(points)} distinct periodic points, expected {size}")
    return PeriodicPointCensus(n, size, tuple(cycles))
