"""Brent cycle detection and canonical forms for cycles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of iterating a map from a start value.

    ``cycle`` is empty when the budget ran out before the orbit closed.
    """

    preperiod: int
    cycle: tuple
    steps_taken: int
    trace: tuple | None = None

    @property
    def found(self) -> bool:
        return bool(self.cycle)


def find_cycle(step: Callable, x0, max_steps: int, keep_trace: bool = False) -> OrbitReport:
    """Brent's algorithm on ``x0, step(x0), ...``.

    A cycle is reported iff preperiod + period <= ``max_steps``; the
    detection phase is allowed ``3 * max_steps + 2`` evaluations, which
    covers Brent's overshoot in that case.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    allowance = 3 * max_steps + 2
    power = lam = 1
    tortoise, hare = x0, step(x0)
    steps = 1
    while tortoise != hare:
        if steps >= allowance:
            return OrbitReport(0, (), steps)
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        steps += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    steps += lam + 2 * mu
    if mu + lam > max_steps:
        return OrbitReport(0, (), steps)

    cycle = [tortoise]
    for _ in range(lam - 1):
        cycle.append(step(cycle[-1]))
    trace = None
    if keep_trace:
        trace = [x0]
        for _ in range(mu + lam - 1):
            trace.append(step(trace[-1]))
        trace = tuple(trace)
    return OrbitReport(mu, tuple(cycle), steps, trace)


def min_rotation(seq: Sequence, key: Callable = lambda a: a) -> tuple:
    """Lexicographically least rotation of ``seq`` under ``key``."""
    n = len(seq)
    if n == 0:
        return ()
    keys = [key(a) for a in seq]
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return tuple(seq[best:]) + tuple(seq[:best])


def primitive_period(seq: Sequence[Hashable]) -> int:
    """Least d >= 1 with seq invariant under rotation by d (d divides len)."""
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[i] == seq[(i + d) % n] for i in range(n)):
            return d
    return n
