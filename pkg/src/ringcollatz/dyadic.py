"""The classical 3x+1 map on rationals with odd denominator (Q inside Z_2).

Values are plain ``fractions.Fraction`` objects whose denominator is odd;
parity is the parity of the numerator.  Truncated 2-adic digit strings
are only produced for display by ``dyadic_digits``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cycles import OrbitReport, find_cycle
from .errors import BudgetExceeded, PreconditionError, RingError
from .parity import (
    condense,
    divisors,
    enumerate_cyclically_zero_dense,
    is_cyclically_zero_dense,
    lucas_like,
    mobius,
    rotation_orbits,
)

DEFAULT_Z2_BUDGET = 1 << 22


def as_dyadic(value) -> Fraction:
    """Coerce to a Fraction and check that it lies in Z_2."""
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise RingError(f"cannot parse rational {value!r}: {exc}") from None
    elif not isinstance(value, Fraction):
        value = Fraction(value)
    if value.denominator % 2 == 0:
        raise RingError(f"{value} has an even denominator and is not a 2-adic integer")
    return value


def format_dyadic(f: Fraction) -> str:
    return str(f)


def is_odd(f: Fraction) -> bool:
    return f.numerator % 2 == 1


def dyadic_step(f: Fraction) -> Fraction:
    """f/2 for even f, 3f+1 for odd f."""
    return 3 * f + 1 if is_odd(f) else f / 2


def dyadic_step_condensed(f: Fraction) -> Fraction:
    """f/2 for even f, (3f+1)/2 for odd f."""
    return (3 * f + 1) / 2 if is_odd(f) else f / 2


def z2_parity_vector(f: Fraction, n: int, which: str = "full") -> tuple[int, ...]:
    if n < 1:
        raise PreconditionError("n must be >= 1")
    step = {"full": dyadic_step, "condensed": dyadic_step_condensed}.get(which)
    if step is None:
        raise ValueError(f"unknown map {which!r}")
    out = []
    for _ in range(n):
        out.append(f.numerator % 2)
        f = step(f)
    return tuple(out)


def _check_bits(bits: Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(b) for b in bits)
    if not bits:
        raise PreconditionError("empty bit vector")
    if any(b not in (0, 1) for b in bits):
        raise PreconditionError(f"{bits} has entries outside {{0, 1}}")
    return bits


def periodic_from_parity_z2(bits: Sequence[int]) -> Fraction:
    """The point of condensed period dividing n with the given parities.

    f = sum_j v_j 2^j 3^(s_j) / (2^n - 3^s), where s is the number of ones
    and s_j the number of ones after position j.
    """
    bits = _check_bits(bits)
    n, s = len(bits), sum(bits)
    num, after = 0, s
    for j, b in enumerate(bits):
        if b:
            after -= 1
            num += (1 << j) * 3 ** after
    return Fraction(num, (1 << n) - 3 ** s)


def periodic_from_cyclic_bits(bits: Sequence[int]) -> Fraction:
    """The point with T^n(f) = f whose full-map parity vector is ``bits``."""
    bits = _check_bits(bits)
    if not is_cyclically_zero_dense(bits):
        raise PreconditionError(
            f"{bits} is not cyclically zero-dense, so it is no full-map parity vector; "
            "the condensed construction accepts any bit vector")
    if bits[-1] == 0:
        return periodic_from_parity_z2(condense(bits))
    # A trailing 1 forces a leading 0 after wraparound: rotate, build, step back.
    return dyadic_step(periodic_from_parity_z2(condense(bits[-1:] + bits[:-1])))


def _cycle_of(f: Fraction, step, n: int) -> tuple[Fraction, ...]:
    members = [f]
    g = step(f)
    while g != f:
        members.append(g)
        if len(members) > n:
            raise AssertionError(f"{f} is not periodic with period dividing {n}")
        g = step(g)
    return tuple(members)


def enumerate_z2_cycles(n: int, budget: int = DEFAULT_Z2_BUDGET) -> list[tuple[Fraction, ...]]:
    """All full-map cycles of exact length n among rationals in Z_2.

    Each cycle starts at the point whose parity vector is the least rotation
    of its class, and cycles come in order of that representative.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if (1 << n) > budget:
        raise BudgetExceeded(f"2^{n} vectors exceed budget {budget}")
    vectors = enumerate_cyclically_zero_dense(2, n, budget=budget)
    out = []
    for cls in rotation_orbits(vectors):
        if cls.period != n:
            continue
        cycle = _cycle_of(periodic_from_cyclic_bits(cls.representative), dyadic_step, n)
        if len(cycle) != n:
            raise AssertionError(f"class {cls.representative} gave a cycle of length {len(cycle)}")
        out.append(cycle)
    return out


def z2_cycle_count(n: int) -> int:
    """(1/n) sum_{d | n} mu(d) L_{n/d} with the Lucas numbers."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    total = sum(mobius(d) * lucas_like(2, n // d) for d in divisors(n))
    count, rem = divmod(total, n)
    if rem:
        raise AssertionError(f"Lucas sum {total} not divisible by {n}")
    return count


def condensed_cycle_count(n: int) -> int:
    """(1/n) sum_{d | n} mu(d) 2^(n/d), the number of binary necklaces of period n."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    total = sum(mobius(d) * (1 << (n // d)) for d in divisors(n))
    count, rem = divmod(total, n)
    if rem:
        raise AssertionError(f"necklace sum {total} not divisible by {n}")
    return count


def enumerate_condensed_cycles(n: int, budget: int = DEFAULT_Z2_BUDGET) -> list[tuple[Fraction, ...]]:
    """Condensed-map cycles of exact length n, one per aperiodic binary necklace."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if (1 << n) > budget:
        raise BudgetExceeded(f"2^{n} vectors exceed budget {budget}")
    all_bits = [tuple((m >> i) & 1 for i in range(n)) for m in range(1 << n)]
    out = []
    for cls in rotation_orbits(all_bits):
        if cls.period == n:
            cycle = _cycle_of(periodic_from_parity_z2(cls.representative), dyadic_step_condensed, n)
            if len(cycle) != n:
                raise AssertionError(f"class {cls.representative} gave a cycle of length {len(cycle)}")
            out.append(cycle)
    return out


def dyadic_digits(f, m: int) -> tuple[int, ...]:
    """First m binary digits (least significant first) of f in Z_2."""
    f = as_dyadic(f)
    if m < 0:
        raise PreconditionError("m must be >= 0")
    mod = 1 << m
    if m == 0:
        return ()
    r = f.numerator * pow(f.denominator, -1, mod) % mod
    return tuple((r >> i) & 1 for i in range(m))


def rational_orbit(f, budget: int = 10_000, condensed: bool = False) -> OrbitReport:
    """Iterate from a rational in Z_2 and report whether a cycle is reached.

    An empty cycle only means the budget ran out; it says nothing about
    divergence.
    """
    f = as_dyadic(f)
    return find_cycle(dyadic_step_condensed if condensed else dyadic_step, f, budget)

