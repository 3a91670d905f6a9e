"""Polynomials over a coefficient ring and the Collatz-analogue map on R[x].

The map sends an odd polynomial f (nonzero constant term f0) to
(x+1)*f - f0 and an even one to f/x.  The auxiliary map
``identity_plus_shift`` is ((x+1)*f - f0)/x, which is f plus the shift
that drops the constant term and divides by x.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum

from .cycles import OrbitReport, find_cycle
from .errors import BudgetExceeded, PreconditionError, RingError, UnsupportedRing
from .rings import GaloisField, PolyOverPrime, Ring, characteristic_factorization, make_ring
from .valuation import threshold_constant

DEG_ZERO = float("-inf")
DEFAULT_K_LIMIT = 10**6


@dataclass(frozen=True, slots=True)
class Poly:
    """Polynomial with little-endian coefficients and no trailing zeros."""

    ring: Ring
    coeffs: tuple

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, tuple):
            c = tuple(c)
        if c and self.ring.is_zero(c[-1]):
            c = list(c)
            while c and self.ring.is_zero(c[-1]):
                c.pop()
            c = tuple(c)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, ring, obj) -> "Poly":
        """From ``[c0, c1, ...]`` (a JSON string or a list)."""
        ring = make_ring(ring)
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise RingError(f"cannot parse polynomial {obj!r}: {exc}") from None
        if not isinstance(obj, (list, tuple)):
            raise RingError(f"polynomial must be a list of coefficients, got {obj!r}")
        return cls(ring, tuple(ring.parse_element(c) for c in obj))

    @classmethod
    def monomial(cls, ring, c, k: int) -> "Poly":
        ring = make_ring(ring)
        return cls(ring, (ring.zero,) * k + (c,))

    def to_json(self) -> list:
        return [self.ring.format_element(c) for c in self.coeffs]

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def constant(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_odd(self) -> bool:
        return not self.ring.is_zero(self.constant)

    def sort_key(self):
        key = self.ring.sort_key
        return (len(self.coeffs), tuple(key(c) for c in self.coeffs))

    def __add__(self, other):
        r = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(r, tuple(r.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))

    def __neg__(self):
        return Poly(self.ring, tuple(self.ring.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        r = self.ring
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(r, ())
        out = [r.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if r.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = r.add(out[i + j], r.mul(x, y))
        return Poly(r, tuple(out))

    def scale(self, c) -> "Poly":
        r = self.ring
        return Poly(r, tuple(r.mul(c, a) for a in self.coeffs))

    def shift_up(self, k: int = 1) -> "Poly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Poly(self.ring, (self.ring.zero,) * k + self.coeffs)

    def shift_down(self) -> "Poly":
        """Drop the constant term and divide by x (the shift map L)."""
        return Poly(self.ring, self.coeffs[1:])


def one_plus_x_pow(ring, k: int) -> Poly:
    """(x + 1)**k."""
    ring = make_ring(ring)
    row = [ring.one]
    for _ in range(k):
        row = [row[0]] + [ring.add(row[i], row[i + 1]) for i in range(len(row) - 1)] + [row[-1]]
    return Poly(ring, tuple(row))


def all_polys(ring, max_degree: int):
    """Every polynomial of degree <= ``max_degree`` over a finite ring."""
    ring = make_ring(ring)
    elems = ring.elements()
    for coeffs in itertools.product(elems, repeat=max_degree + 1):
        yield Poly(ring, coeffs)


def collatz_step(f: Poly) -> Poly:
    c = f.coeffs
    if not c:
        return f
    r = f.ring
    if r.is_zero(c[0]):
        return Poly(r, c[1:])
    out = [r.zero]
    for i in range(1, len(c)):
        out.append(r.add(c[i], c[i - 1]))
    out.append(c[-1])
    return Poly(r, tuple(out))


def identity_plus_shift(f: Poly) -> Poly:
    """((x+1)f - f0)/x; coefficient j becomes c_j + c_{j+1}."""
    c = f.coeffs
    if not c:
        return f
    r = f.ring
    out = [r.add(c[i], c[i + 1]) for i in range(len(c) - 1)]
    out.append(c[-1])
    return Poly(r, tuple(out))


def _t_degree(f: Poly) -> int:
    return max((len(c) for c in f.coeffs), default=0)


def default_budget(f: Poly) -> int:
    """2*K(deg f + 1)*(deg f + 2) steps, positive characteristic only."""
    ring = f.ring
    if ring.characteristic == 0:
        raise UnsupportedRing("char-zero rings need an explicit orbit budget")
    d = max(f.degree, 0)
    cf = characteristic_factorization(ring)
    return 2 * threshold_constant(cf, d + 1) * (d + 2)


def orbit(f: Poly, max_steps: int | None = None, trace: bool = False) -> OrbitReport:
    """Iterate T from ``f`` until it cycles or ``max_steps`` is used up."""
    if max_steps is None:
        max_steps = default_budget(f)
    step = collatz_step
    if isinstance(f.ring, PolyOverPrime):
        bound = _t_degree(f)

        def step(g):
            h = collatz_step(g)
            assert _t_degree(h) <= bound, "t-degree grew under T"
            return h

    return find_cycle(step, f, max_steps, keep_trace=trace)


def _require_positive_char(ring):
    if ring.characteristic == 0:
        raise UnsupportedRing("char-zero ring: use char_zero_classify")


def binomial_sums_nonzero(f: Poly, upto: int) -> bool:
    """True iff sum_j C(l, j) b_j != 0 for every 0 <= l <= upto.

    Binomials are streamed as Pascal rows reduced mod the characteristic.
    """
    ring = f.ring
    N = ring.characteristic
    b = f.coeffs
    n = len(b) - 1
    row = [1] + [0] * n
    for l in range(upto + 1):
        s = ring.zero
        for j in range(min(l, n) + 1):
            if row[j]:
                s = ring.add(s, ring.scale(b[j], row[j]))
        if ring.is_zero(s):
            return False
        for j in range(n, 0, -1):
            row[j] = (row[j] + row[j - 1]) % N
    return True


def _recurs_within(f: Poly, steps: int) -> int | None:
    g = f
    for i in range(1, steps + 1):
        g = collatz_step(g)
        if g == f:
            return i
    return None


def _cycle_bound(f: Poly) -> int:
    """2*K(max(deg f, 1)): every cycle through f has length dividing this."""
    cf = characteristic_factorization(f.ring)
    return 2 * threshold_constant(cf, max(f.degree, 1))


def is_periodic(f: Poly, limit: int = DEFAULT_K_LIMIT) -> bool:
    """Decide T-periodicity over a ring of positive characteristic.

    Odd f of degree >= 1 use the binomial-sum criterion up to K(deg f);
    even f are decided by iterating at most 2*K(max(deg f, 1)) steps.
    """
    ring = f.ring
    _require_positive_char(ring)
    if f.is_zero():
        return True
    if f.degree == 0:
        return True
    if f.is_odd():
        K = threshold_constant(characteristic_factorization(ring), f.degree)
        if K > limit:
            raise BudgetExceeded(f"K({f.degree}) = {K} exceeds limit {limit}")
        return binomial_sums_nonzero(f, K)
    bound = _cycle_bound(f)
    if bound > 2 * limit:
        raise BudgetExceeded(f"cycle bound {bound} exceeds limit {2 * limit}")
    return _recurs_within(f, bound) is not None


def period_divisor_bound(f: Poly) -> int:
    """2*K(deg f) for odd f of degree >= 1."""
    _require_positive_char(f.ring)
    if not f.is_odd() or f.degree < 1:
        raise PreconditionError("period bound needs an odd polynomial of degree >= 1")
    return 2 * threshold_constant(characteristic_factorization(f.ring), f.degree)


class CharZeroClass(str, Enum):
    ON_ZERO_CYCLE = "on_zero_cycle"
    ON_CONSTANT_CYCLE = "on_constant_cycle"
    NOT_PERIODIC = "not_periodic"


def char_zero_classify(f: Poly) -> CharZeroClass:
    """Placement of f relative to the only cycles (0) and (a, ax) over Z.

    NOT_PERIODIC means f lies on no cycle; whether its orbit eventually
    enters one is not decided here.
    """
    if f.ring.characteristic != 0:
        raise UnsupportedRing("char_zero_classify needs a characteristic-zero ring")
    if f.is_zero():
        return CharZeroClass.ON_ZERO_CYCLE
    c = f.coeffs
    if len(c) == 1 or (len(c) == 2 and f.ring.is_zero(c[0])):
        return CharZeroClass.ON_CONSTANT_CYCLE
    return CharZeroClass.NOT_PERIODIC


def exact_period(f: Poly, limit: int = DEFAULT_K_LIMIT) -> int:
    """Least n >= 1 with T^n(f) = f; raises if f is not periodic."""
    if f.ring.characteristic == 0:
        cls = char_zero_classify(f)
        if cls is CharZeroClass.NOT_PERIODIC:
            raise PreconditionError("polynomial is not periodic")
        return 1 if cls is CharZeroClass.ON_ZERO_CYCLE else 2
    if not is_periodic(f, limit):
        raise PreconditionError("polynomial is not periodic")
    if f.is_zero():
        return 1
    period = _recurs_within(f, _cycle_bound(f))
    if period is None:
        raise AssertionError(f"periodic {f} did not recur within its cycle bound")
    return period


def iterate(f: Poly, k: int) -> Poly:
    for _ in range(k):
        f = collatz_step(f)
    return f


def preperiod_bound_check(f: Poly) -> bool:
    """Whether T^(p*d*(d+1) - d)(f) is periodic, f nonzero over a finite field."""
    ring = f.ring
    if not isinstance(ring, GaloisField):
        raise UnsupportedRing("pre-period bound is stated for finite fields")
    if f.is_zero():
        raise PreconditionError("pre-period bound needs f != 0")
    d = f.degree
    return is_periodic(iterate(f, ring.p * d * (d + 1) - d))

