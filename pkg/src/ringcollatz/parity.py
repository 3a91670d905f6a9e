"""Zero-dense parity vectors and the counting sequences built on them.

A vector is zero-dense when no two consecutive entries are nonzero, and
cyclically zero-dense when that also holds across the wraparound.  These
are the parity traces of the full Collatz-type maps; counting them gives
the number of periodic points, and Moebius inversion turns those into
cycle counts.

Closed forms involving alpha, beta = (1 +- sqrt(4q - 3)) / 2 are computed
through the integer recurrence X_m = X_{m-1} + (q-1) X_{m-2}:

    L_0 = 2, L_1 = 1        L_n = alpha^n + beta^n
    V_1 = V_2 = 1           e_n = V_{n+2}  (zero-dense vectors of length n)
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache
from math import isqrt
from typing import Sequence

from .errors import BudgetExceeded, PreconditionError
from .rings import factorize

DEFAULT_ENUM_BUDGET = 5_000_000


def _nz(a) -> bool:
    return a != 0 and a != ()


def is_zero_dense(v: Sequence) -> bool:
    if not len(v):
        raise PreconditionError("empty vector")
    return not any(_nz(v[i]) and _nz(v[i + 1]) for i in range(len(v) - 1))


def is_cyclically_zero_dense(v: Sequence) -> bool:
    if not len(v):
        raise PreconditionError("empty vector")
    if len(v) == 1:
        return not _nz(v[0])
    return is_zero_dense(v) and not (_nz(v[-1]) and _nz(v[0]))


def expand(v: Sequence) -> tuple:
    """Insert a 0 after every nonzero entry."""
    out = []
    for a in v:
        out.append(a)
        if _nz(a):
            out.append(0 if isinstance(a, int) else type(a)())
    return tuple(out)


def condense(v: Sequence) -> tuple:
    """Remove the 0 that follows every nonzero entry (inverse of expand)."""
    if not is_zero_dense(v):
        raise PreconditionError(f"{tuple(v)} is not zero-dense")
    if _nz(v[-1]):
        raise PreconditionError("vector ends in a nonzero entry; its trailing 0 is outside the window")
    out = []
    i = 0
    while i < len(v):
        out.append(v[i])
        i += 2 if _nz(v[i]) else 1
    return tuple(out)


def enumerate_zero_dense(q: int, n: int, cyclic: bool = False, budget: int = DEFAULT_ENUM_BUDGET):
    """Zero-dense (or cyclically zero-dense) vectors over symbols 0..q-1.

    Output is in lexicographic order; symbol 0 plays the ring zero.
    """
    if q < 2 or n < 1:
        raise PreconditionError("need q >= 2 and n >= 1")
    size = lucas_like(q, n) if cyclic else fib_like(q, n + 2)
    if size > budget:
        raise BudgetExceeded(f"{size} vectors exceed enumeration budget {budget}")
    out = []
    buf = [0] * n

    def rec(i):
        if i == n:
            if not (cyclic and buf[0] and buf[-1]):
                out.append(tuple(buf))
            return
        for s in range(q):
            if s and i and buf[i - 1]:
                break
            buf[i] = s
            rec(i + 1)
        buf[i] = 0

    rec(0)
    return out


def enumerate_cyclically_zero_dense(q: int, n: int, budget: int = DEFAULT_ENUM_BUDGET):
    return enumerate_zero_dense(q, n, cyclic=True, budget=budget)


def _recurrence(q, x0, x1, n):
    a, b = x0, x1
    for _ in range(n):
        a, b = b, b + (q - 1) * a
    return a


def lucas_like(q: int, n: int) -> int:
    """L_n = alpha^n + beta^n as an exact integer (q = 2: Lucas numbers)."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return _recurrence(q, 2, 1, n)


def fib_like(q: int, m: int) -> int:
    """V_m with V_0 = 0, V_1 = V_2 = 1; the zero-dense count is e_n = V_{n+2}."""
    if m < 0:
        raise PreconditionError("m must be >= 0")
    return _recurrence(q, 0, 1, m)


def zero_dense_count(q: int, n: int) -> int:
    """Number of zero-dense vectors of length n (e_0 = 1 for the empty one)."""
    return fib_like(q, n + 2)


def periodic_point_count(q: int, n: int) -> int:
    """Number of cyclically zero-dense vectors of length n."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if n == 1:
        return 1
    if n == 2:
        return 2 * q - 1
    return zero_dense_count(q, n - 1) + (q - 1) * zero_dense_count(q, n - 3)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise PreconditionError("mobius needs n >= 1")
    out = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        out = -out
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def exact_period_count(q: int, n: int) -> int:
    """Points of exact period n: sum over d | n of mu(d) j_{n/d}."""
    return sum(mobius(d) * periodic_point_count(q, n // d) for d in divisors(n))


def cycle_count(q: int, n: int) -> int:
    """Number of cycles of exact length n (i_n / n)."""
    count, rem = divmod(exact_period_count(q, n), n)
    if rem:
        raise AssertionError(f"i_{n} = {exact_period_count(q, n)} not divisible by {n} (q={q})")
    return count


def cycle_count_lucas(q: int, n: int) -> int:
    """The same count from (1/n) sum mu(d) L_{n/d}."""
    total = sum(mobius(d) * lucas_like(q, n // d) for d in divisors(n))
    count, rem = divmod(total, n)
    if rem:
        raise AssertionError(f"Lucas sum {total} not divisible by {n} (q={q})")
    return count


@dataclass(frozen=True)
class RotationClass:
    representative: tuple
    period: int
    members: tuple


def rotation_orbits(vectors) -> list[RotationClass]:
    """Partition equal-length vectors into rotation classes.

    Each class lists every rotation of its members, so the input should be
    closed under rotation; classes are keyed by their least rotation.
    """
    vectors = [tuple(v) for v in vectors]
    if len({len(v) for v in vectors}) > 1:
        raise PreconditionError("vectors have mixed lengths")
    seen: set[tuple] = set()
    out = []
    for v in vectors:
        if v in seen:
            continue
        rots = {v[i:] + v[:i] for i in range(len(v))}
        seen |= rots
        rep = min(rots)
        out.append(RotationClass(rep, len(rots), tuple(sorted(rots))))
    out.sort(key=lambda c: c.representative)
    return out


def asymptotic_ratio(q: int, n: int, digits: int = 50) -> Decimal:
    """Z_n * n / alpha^n with ``digits`` significant decimal digits."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    with localcontext() as ctx:
        ctx.prec = digits
        alpha = (1 + Decimal(4 * q - 3).sqrt()) / 2
        return Decimal(cycle_count(q, n) * n) / alpha ** n


@dataclass(frozen=True)
class CountLedger:
    q: int
    rows: tuple[tuple[int, int, int, int, int], ...]

    @classmethod
    def build(cls, q: int, n_max: int) -> "CountLedger":
        rows = tuple((n, zero_dense_count(q, n), periodic_point_count(q, n), exact_period_count(q, n), cycle_count(q, n))
                     for n in range(1, n_max + 1))
        return cls(q, rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "e", "j", "i", "Z"])
        w.writerows(self.rows)
        return buf.getvalue()
