"""Cycle censuses for the polynomial map over finite rings.

Two independent routes produce a table of cycle counts by length:

* ``brute_force_census`` runs the orbit of every polynomial up to a degree
  cap and collects the distinct cycles;
* ``matrix_census`` enumerates the odd periodic polynomials of degree < p^k
  over F_q directly as B_k v with v ranging over vectors with all entries
  nonzero, then groups them into cycles.

``count_cycles_formula`` gives the closed form both must agree with.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

from .cycles import min_rotation
from .errors import BudgetExceeded, PreconditionError, UnsupportedRing
from .poly import Poly, all_polys, collatz_step, orbit
from .rings import GaloisField, make_ring
from .valuation import binom_mod

MATRIX_SIZE_CAP = 81
DEFAULT_WORK_BUDGET = 2_000_000


@dataclass(frozen=True)
class TriangularMatrix:
    """Lower-triangular square matrix with entries in the prime field F_p."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "TriangularMatrix") -> "TriangularMatrix":
        n, p = self.size, self.p
        out = []
        for i in range(n):
            out.append(tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(j, i + 1)) % p
                             for j in range(n)))
        return TriangularMatrix(p, tuple(out))

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == (i == j) for i in range(self.size) for j in range(self.size))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def build_matrices(p: int, k: int, cap: int = MATRIX_SIZE_CAP) -> tuple[TriangularMatrix, TriangularMatrix]:
    """The pair (B_k, A_k) of size p^k, with B_k A_k = I over F_p.

    B[i][j] = (-1)^(i+j) C(i, j) and A[i][j] = C(i, j) for i >= j (0-based).
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    size = p ** k
    if size > cap:
        raise BudgetExceeded(f"matrix size {size} exceeds cap {cap}")
    a_rows, b_rows = [], []
    for i in range(size):
        a_rows.append(tuple(binom_mod(i, j, p) if j <= i else 0 for j in range(size)))
        b_rows.append(tuple((-1) ** (i + j) * binom_mod(i, j, p) % p if j <= i else 0
                            for j in range(size)))
    B = TriangularMatrix(p, tuple(b_rows))
    A = TriangularMatrix(p, tuple(a_rows))
    if not (B @ A).is_identity() or not (A @ B).is_identity():
        raise AssertionError(f"B_k A_k != I for p={p}, k={k}")
    return B, A


def _as_field(ring) -> GaloisField:
    ring = make_ring(ring)
    if not isinstance(ring, GaloisField):
        raise UnsupportedRing(f"{ring.spec} is not a finite field")
    return ring


def apply_matrix(ring: GaloisField, M: TriangularMatrix, vec) -> tuple:
    out = []
    for row in M.rows:
        s = ring.zero
        for m, v in zip(row, vec):
            if m:
                s = ring.add(s, ring.scale(v, m))
        out.append(s)
    return tuple(out)


def periodic_odd_polys(ring, k: int, cap: int = MATRIX_SIZE_CAP) -> list[Poly]:
    """All odd T-periodic polynomials of degree < p^k over the field ``ring``.

    There are exactly (q-1)^(p^k) of them, one for each vector v with all
    entries nonzero.
    """
    F = _as_field(ring)
    B, _ = build_matrices(F.p, k, cap)
    nonzero = [a for a in F.elements() if a != F.zero]
    return [Poly(F, apply_matrix(F, B, v)) for v in itertools.product(nonzero, repeat=B.size)]


def binomial_transform(ring, f: Poly, k: int) -> tuple:
    """A_k applied to the coefficients of f (deg f < p^k).

    Entry l is sum_j C(l, j) a_j, the constant term of T^(2l)(f) while f
    stays on its odd/even alternation.
    """
    F = _as_field(ring)
    _, A = build_matrices(F.p, k)
    if len(f.coeffs) > A.size:
        raise PreconditionError(f"degree {f.degree} is not below {A.size}")
    return apply_matrix(F, A, f.coeffs + (F.zero,) * (A.size - len(f.coeffs)))


def count_cycles_formula(q: int, p: int, k: int) -> int:
    """Number of T-cycles of length 2p^k over F_q (k = 0 gives length 2)."""
    if q < 2 or p < 2:
        raise PreconditionError("need q, p >= 2")
    t = q
    while t % p == 0:
        t //= p
    if t != 1:
        raise PreconditionError(f"{q} is not a power of {p}")
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if k == 0:
        return q - 1
    num = (q - 1) ** (p ** k) - (q - 1) ** (p ** (k - 1))
    count, rem = divmod(num, p ** k)
    if rem:
        raise AssertionError(f"cycle-count formula not integral for q={q}, p={p}, k={k}")
    return count


def canonical_cycle(cycle) -> tuple[Poly, ...]:
    """Rotation of the cycle starting at its least member (degree-major)."""
    return min_rotation(cycle, key=Poly.sort_key)


@dataclass
class CensusTable:
    """Distinct T-cycles grouped by length."""

    ring: str
    degree_cap: int | None
    cycles: dict[int, list[tuple[Poly, ...]]] = field(default_factory=dict)

    @property
    def counts(self) -> dict[int, int]:
        return {n: len(cs) for n, cs in sorted(self.cycles.items())}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "count"])
        for n, c in self.counts.items():
            w.writerow([n, c])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "ring": self.ring,
            "degree_cap": self.degree_cap,
            "counts": {str(n): c for n, c in self.counts.items()},
        })


def _table(ring, cap, cycles) -> CensusTable:
    grouped: dict[int, list] = {}
    for c in sorted(cycles, key=lambda c: (len(c), [m.sort_key() for m in c])):
        grouped.setdefault(len(c), []).append(c)
    return CensusTable(ring.spec, cap, grouped)


def brute_force_census(ring, degree_cap: int, budget: int = DEFAULT_WORK_BUDGET) -> CensusTable:
    """Orbit every polynomial of degree <= ``degree_cap`` and tabulate cycles."""
    ring = make_ring(ring)
    if not ring.is_finite:
        raise UnsupportedRing("census needs a finite ring")
    total = ring.cardinality ** (degree_cap + 1)
    if total > budget:
        raise BudgetExceeded(f"{total} polynomials exceed work budget {budget}")
    seen: set[Poly] = set()
    cycles = set()
    for f in all_polys(ring, degree_cap):
        if f in seen:
            continue
        report = orbit(f)
        if not report.found:
            raise AssertionError(f"orbit of {f} did not close within its budget")
        if report.cycle[0] not in seen:
            cycles.add(canonical_cycle(report.cycle))
            seen.update(report.cycle)
    return _table(ring, degree_cap, cycles)


def matrix_census(ring, k: int, budget: int = DEFAULT_WORK_BUDGET) -> CensusTable:
    """Cycles through odd periodic polynomials of degree < p^k, found via B_k."""
    F = _as_field(ring)
    size = F.p ** k
    total = (F.cardinality - 1) ** size
    if total > budget:
        raise BudgetExceeded(f"{total} vectors exceed work budget {budget}")
    seen: set[Poly] = set()
    cycles = []
    for f in periodic_odd_polys(F, k):
        if f in seen:
            continue
        members = [f]
        g = collatz_step(f)
        while g != f:
            members.append(g)
            g = collatz_step(g)
            if len(members) > 2 * size:
                raise AssertionError(f"{f} from B_k v is not periodic")
        seen.update(members)
        cycles.append(canonical_cycle(members))
    return _table(F, None, cycles)


def census_counts_by_k(table: CensusTable, p: int) -> Counter:
    """Re-key a census by k where lengths are 2p^k (k = 0 for length 2)."""
    out = Counter()
    for n, c in table.counts.items():
        if n == 1:
            continue
        m, k = n // 2, 0
        while m % p == 0:
            m //= p
            k += 1
        if m != 1 or n % 2:
            raise AssertionError(f"cycle length {n} is not of the form 2p^k")
        out[k] += c
    return out
