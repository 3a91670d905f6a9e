"""Collatz-type maps over commutative rings, power series and 2-adic rationals."""

from .errors import BudgetExceeded, CollatzError, PreconditionError, RingError, UnsupportedRing
from .poly import Poly, collatz_step, exact_period, identity_plus_shift, is_periodic, orbit
from .rings import make_ring
from .series import RationalSeries, series_step, series_step_condensed

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CollatzError",
    "Poly",
    "PreconditionError",
    "RationalSeries",
    "RingError",
    "UnsupportedRing",
    "collatz_step",
    "exact_period",
    "is_periodic",
    "make_ring",
    "orbit",
    "identity_plus_shift",
    "series_step",
    "series_step_condensed",
]
