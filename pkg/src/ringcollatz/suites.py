"""Self-contained verification suites behind ``ringcollatz verify``.

Each suite returns a list of ``Check`` results; a suite passes when every
check does.  Randomized suites draw from ``random.Random(seed)`` so a run
is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from decimal import Decimal
from math import comb

from . import census, dyadic, parity, poly, series, valuation
from .parity import condense, expand
from .poly import Poly
from .rings import characteristic_factorization, make_ring


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def suite_kummer(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    bad = 0
    samples = 0
    for p in (2, 3, 5, 7):
        for _ in range(2500):
            n = rng.randint(0, 2000)
            m = rng.randint(0, n)
            samples += 1
            if valuation.binom_valuation(p, n, m) != valuation.vp(p, comb(n, m)):
                bad += 1
    checks.append(Check("kummer-vs-bigint", bad == 0, f"{samples} samples, {bad} mismatches"))

    bad = cases = 0
    for p in (2, 3, 5):
        for a in range(1, 3001):
            e = valuation.vp(p, a)
            for n in range(1, min(a, p ** e - 1) + 1):
                cases += 1
                if valuation.valuation_difference(p, a, n) != valuation.vp(p, comb(a, n)):
                    bad += 1
    checks.append(Check("valuation-difference-law", bad == 0, f"{cases} cases, {bad} mismatches"))

    bad = cases = 0
    for big_n in (2, 3, 4, 6, 8, 9, 12):
        for n in range(1, 13):
            for k in range(n, 601):
                cases += 1
                s1, s2 = valuation.divisibility_equivalence_check(big_n, n, k)
                bad += s1 != s2
    checks.append(Check("threshold-divisibility-equivalence", bad == 0, f"{cases} cases, {bad} mismatches"))
    return checks


def suite_fq_census(seed: int = 0) -> list[Check]:
    checks = []
    plans = [("F2", 2, 6), ("F3", 3, 3), ("F4", 2, 3), ("F5", 5, 4)]
    for spec, p, cap in plans:
        q = make_ring(spec).cardinality
        counts = census.brute_force_census(spec, cap).counts
        want = {1: 1, 2: census.count_cycles_formula(q, p, 0)}
        if q - 1 > 1:
            want[2 * p] = census.count_cycles_formula(q, p, 1)
        got = {n: counts.get(n, 0) for n in (1, 2, 2 * p)}
        want.setdefault(2 * p, 0)
        checks.append(Check(f"census-{spec}-deg<={cap}", got == want, f"found {counts}, formula {want}"))
    t = time.perf_counter()
    m = census.matrix_census("F3", 2).counts
    want18 = census.count_cycles_formula(3, 3, 2)
    checks.append(Check("matrix-census-F3-k2", m.get(18) == want18 == 56,
                        f"length 18: {m.get(18)} vs {want18} in {time.perf_counter() - t:.1f}s"))
    return checks


def _scan(spec, cap):
    return list(poly.all_polys(spec, cap))


def suite_period_law(seed: int = 0) -> list[Check]:
    checks = []
    for spec, cap in (("Z/4", 2), ("Z/6", 2), ("Z/12", 2), ("F3", 3), ("F4", 3)):
        ring = make_ring(spec)
        bad = tested = 0
        for f in _scan(ring, cap):
            if not f.is_odd() or f.degree < 1 or not poly.is_periodic(f):
                continue
            tested += 1
            period = poly.exact_period(f)
            bound = poly.period_divisor_bound(f)
            if bound % period or (ring.is_unit(f.leading) and period != bound):
                bad += 1
        checks.append(Check(f"period-law-{spec}", bad == 0, f"{tested} periodic odd polys, {bad} violations"))
    return checks


def suite_criterion(seed: int = 0) -> list[Check]:
    checks = []
    for spec in ("F2", "F3", "Z/4", "Z/6"):
        bad = total = 0
        for f in _scan(spec, 3):
            total += 1
            rep = poly.orbit(f)
            if poly.is_periodic(f) != (rep.found and rep.preperiod == 0):
                bad += 1
        checks.append(Check(f"criterion-{spec}", bad == 0, f"{total} polys, {bad} disagreements"))
    return checks


def suite_preperiod(seed: int = 0) -> list[Check]:
    checks = []
    for spec, cap in (("F2", 5), ("F3", 3)):
        polys = [f for f in _scan(spec, cap) if not f.is_zero()]
        bad = [f for f in polys if not poly.preperiod_bound_check(f)]
        checks.append(Check(f"preperiod-{spec}", not bad, f"{len(polys)} polys, {len(bad)} violations"))
    return checks


def suite_series_census(seed: int = 0) -> list[Check]:
    checks = []
    for q in (2, 3, 4, 5):
        bad = []
        for n in range(1, 11):
            c = series.periodic_point_census(f"Z/{q}", n)
            size_ok = c.size == parity.periodic_point_count(q, n) and (n == 1 or c.size == parity.lucas_like(q, n))
            if not size_ok or len(c.cycles) != parity.cycle_count(q, n):
                bad.append(n)
        checks.append(Check(f"series-census-q{q}", not bad, f"n=1..10, mismatched n: {bad}"))
    return checks


def suite_z2(seed: int = 0) -> list[Check]:
    checks = []
    counts = [len(dyadic.enumerate_z2_cycles(n)) for n in range(1, 19)]
    formula = [dyadic.z2_cycle_count(n) for n in range(1, 19)]
    checks.append(Check("z2-cycles-vs-formula", counts == formula, f"n=1..18: {counts}"))
    necklaces = [len(dyadic.enumerate_condensed_cycles(n)) for n in range(1, 19)]
    formula = [dyadic.condensed_cycle_count(n) for n in range(1, 19)]
    checks.append(Check("condensed-cycles-vs-necklaces", necklaces == formula, f"n=1..18: {necklaces}"))
    return checks


def suite_roundtrip(seed: int = 0) -> list[Check]:
    checks = []
    for q in (2, 3, 4):
        ring = make_ring(f"Z/{q}")
        bad = total = 0
        for n in range(2, 9):
            for v in parity.enumerate_cyclically_zero_dense(q, n):
                total += 1
                f = series.periodic_from_cyclic_parity(ring, v)
                g = f
                for _ in range(n):
                    g = series.series_step(g)
                if g != f or series.parity_vector(f, n) != v:
                    bad += 1
        checks.append(Check(f"series-roundtrip-q{q}", bad == 0, f"{total} vectors, {bad} failures"))
    bad = total = 0
    for n in range(1, 13):
        for m in range(1 << n):
            bits = tuple((m >> i) & 1 for i in range(n))
            total += 1
            f = dyadic.periodic_from_parity_z2(bits)
            g = f
            for _ in range(n):
                g = dyadic.dyadic_step_condensed(g)
            ok = g == f and dyadic.z2_parity_vector(f, n, "condensed") == bits
            if ok and parity.is_cyclically_zero_dense(bits):
                h = dyadic.periodic_from_cyclic_bits(bits)
                k = h
                for _ in range(n):
                    k = dyadic.dyadic_step(k)
                ok = k == h and dyadic.z2_parity_vector(h, n) == bits
            bad += not ok
    checks.append(Check("z2-roundtrip", bad == 0, f"{total} bit vectors, {bad} failures"))
    rng = random.Random(seed)
    bad = 0
    for _ in range(200):
        bits = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 30)))
        if condense(expand(bits)) != bits:
            bad += 1
    checks.append(Check("condense-expand", bad == 0, f"200 random vectors, {bad} failures"))
    return checks


def suite_asymptotics(seed: int = 0) -> list[Check]:
    worst = {}
    for q in (2, 5):
        worst[q] = max(abs(parity.asymptotic_ratio(q, n) - 1) for n in range(40, 61))
    at60 = abs(parity.asymptotic_ratio(2, 60) - 1)
    return [
        Check("asymptotic-q2", worst[2] <= Decimal("0.01"), f"max deviation {worst[2]:.3e}"),
        Check("asymptotic-q5", worst[5] <= Decimal("0.01"), f"max deviation {worst[5]:.3e}"),
        Check("asymptotic-q2-n60", at60 <= Decimal("0.001"), f"deviation {at60:.3e}"),
    ]


def suite_infinite_ring(seed: int = 0) -> list[Check]:
    ring = make_ring("F2[t]")
    f = Poly(ring, ((1, 1), (0, 1)))
    period = poly.exact_period(f)
    cf = characteristic_factorization(ring)
    bound = 2 * valuation.threshold_constant(cf, 1)
    checks = [Check("F2[t]-period", period == 4 == bound, f"period {period}, bound {bound}")]
    rng = random.Random(seed)
    stuck = 0
    for _ in range(200):
        g = Poly(ring, tuple(ring.random_element(rng, degree=2) for _ in range(4)))
        if not poly.orbit(g).found:
            stuck += 1
    checks.append(Check("F2[t]-random-orbits", stuck == 0, f"200 polys, {stuck} without a cycle"))
    return checks


SUITES = {
    "kummer": suite_kummer,
    "fq-census": suite_fq_census,
    "period-law": suite_period_law,
    "criterion": suite_criterion,
    "preperiod": suite_preperiod,
    "series-census": suite_series_census,
    "z2": suite_z2,
    "roundtrip": suite_roundtrip,
    "asymptotics": suite_asymptotics,
    "infinite-ring": suite_infinite_ring,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn(seed)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed)
