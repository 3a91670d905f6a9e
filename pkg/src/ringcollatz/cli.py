"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 budget exhausted
(inconclusive), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import census, dyadic, parity, poly, series, suites, valuation
from .errors import BudgetExceeded, CollatzError
from .poly import Poly
from .rings import characteristic_factorization, factorize, make_ring

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3
WORK_ENV = "RINGCOLLATZ_MAX_WORK"
DEFAULT_CHAR_ZERO_BUDGET = 10_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def work_ceiling() -> int | None:
    raw = os.environ.get(WORK_ENV)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{WORK_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{WORK_ENV} must be positive")
    return value


def capped(budget: int) -> int:
    ceiling = work_ceiling()
    return budget if ceiling is None else min(budget, ceiling)


def parse_range(text: str) -> list[int]:
    """``5``, ``1..5`` or ``1,3,7``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N, A..B or A,B,C") from None


def parse_vector(text: str) -> tuple:
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse vector {text!r}: {exc}") from None
        if not isinstance(data, list):
            raise UsageError("vector must be a JSON list")
        return tuple(data)
    if text and all(c in "01" for c in text):
        return tuple(int(c) for c in text)
    raise UsageError(f"cannot parse vector {text!r}; give a JSON list or a bit string")


def render(obj):
    if isinstance(obj, (Poly, series.RationalSeries)):
        return json.loads(str(obj))
    if isinstance(obj, Fraction):
        return dyadic.format_dyadic(obj)
    return obj


def text(obj) -> str:
    r = render(obj)
    return r if isinstance(r, str) else json.dumps(r, separators=(",", ":"))


def emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _object(args):
    """The start object from --poly / --series / --rational."""
    given = [a for a in ("poly", "series", "rational") if getattr(args, a, None) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --poly, --series, --rational")
    kind = given[0]
    if kind == "rational":
        return kind, None, dyadic.as_dyadic(args.rational)
    if args.ring is None:
        raise UsageError(f"--{kind} needs --ring")
    ring = make_ring(args.ring)
    if kind == "poly":
        return kind, ring, Poly.parse(ring, args.poly)
    return kind, ring, series.RationalSeries.parse(ring, args.series)


def _ring_label(kind, ring):
    return "Z2" if kind == "rational" else ring.spec


def cmd_orbit(args) -> int:
    kind, ring, f = _object(args)
    if kind == "poly":
        budget = args.budget
        if budget is None:
            budget = poly.default_budget(f) if ring.characteristic else DEFAULT_CHAR_ZERO_BUDGET
        rep = poly.orbit(f, capped(budget), trace=args.trace)
    elif kind == "series":
        budget = capped(args.budget or series.DEFAULT_SERIES_BUDGET)
        try:
            rep = series.series_orbit(f, budget)
        except BudgetExceeded:
            rep = None
    else:
        budget = capped(args.budget or 10_000)
        rep = dyadic.rational_orbit(f, budget, condensed=args.condensed)
    found = rep is not None and rep.found
    payload = {
        "ring": _ring_label(kind, ring),
        "start": render(f),
        "budget": budget,
        "found": found,
        "preperiod": rep.preperiod if found else None,
        "cycle": [render(g) for g in rep.cycle] if found else [],
        "cycle_length": len(rep.cycle) if found else None,
    }
    if found and rep.trace is not None:
        payload["trace"] = [render(g) for g in rep.trace]
    if found:
        lines = [f"ring: {payload['ring']}", f"start: {text(f)}",
                 f"preperiod: {rep.preperiod}", f"cycle length: {len(rep.cycle)}",
                 "cycle: " + " -> ".join(text(g) for g in rep.cycle)]
        if "trace" in payload:
            lines.append("trace: " + " -> ".join(text(g) for g in rep.trace))
    else:
        lines = [f"ring: {payload['ring']}", f"start: {text(f)}",
                 f"no cycle within {budget} steps (inconclusive)"]
    emit(args, payload, lines)
    return EXIT_OK if found else EXIT_BUDGET


def _poly_arg(args) -> Poly:
    return Poly.parse(make_ring(args.ring), args.poly)


def cmd_period(args) -> int:
    f = _poly_arg(args)
    ring = f.ring
    if ring.characteristic == 0:
        cls = poly.char_zero_classify(f)
        periodic = cls is not poly.CharZeroClass.NOT_PERIODIC
        payload = {"ring": ring.spec, "poly": render(f), "periodic": periodic,
                   "classification": cls.value,
                   "period": poly.exact_period(f) if periodic else None}
    else:
        periodic = poly.is_periodic(f, capped(poly.DEFAULT_K_LIMIT))
        payload = {"ring": ring.spec, "poly": render(f), "periodic": periodic,
                   "period": poly.exact_period(f, capped(poly.DEFAULT_K_LIMIT)) if periodic else None}
        if f.is_odd() and f.degree >= 1:
            payload["period_divides"] = poly.period_divisor_bound(f)
    lines = [f"{k}: {json.dumps(v) if not isinstance(v, str) else v}" for k, v in payload.items()]
    emit(args, payload, lines)
    return EXIT_OK


def cmd_is_periodic(args) -> int:
    f = _poly_arg(args)
    if f.ring.characteristic == 0:
        cls = poly.char_zero_classify(f)
        payload = {"ring": f.ring.spec, "poly": render(f),
                   "periodic": cls is not poly.CharZeroClass.NOT_PERIODIC,
                   "method": "char-zero classification", "classification": cls.value}
    else:
        method = "binomial sums" if f.is_odd() and f.degree >= 1 else "iteration"
        payload = {"ring": f.ring.spec, "poly": render(f),
                   "periodic": poly.is_periodic(f, capped(args.limit)), "method": method}
    emit(args, payload, [json.dumps(payload["periodic"]), f"method: {payload['method']}"])
    return EXIT_OK


def _prime_of(q: int) -> int:
    fs = factorize(q)
    if len(fs) != 1:
        raise UsageError(f"q = {q} is not a prime power")
    return fs[0][0]


def _field_spec(q: int) -> str:
    _prime_of(q)
    return f"F{q}"


def _count_rows(args):
    """(key columns, formula value, oracle callable or None) per row."""
    rows = []
    if args.domain == "fq":
        if args.q is None:
            raise UsageError("count fq needs --q")
        p = _prime_of(args.q)
        for k in parse_range(args.k or "0..1"):
            length = 2 * p ** k
            value = census.count_cycles_formula(args.q, p, k)

            def oracle(k=k, length=length):
                table = census.brute_force_census(_field_spec(args.q), p ** k - 1, capped(census.DEFAULT_WORK_BUDGET))
                return table.counts.get(length, 0)
            rows.append(({"k": k, "length": length}, value, oracle))
    elif args.domain == "series":
        if args.q is None or args.n is None:
            raise UsageError("count series needs --q and --n")
        for n in parse_range(args.n):
            def oracle(n=n):
                return len(series.periodic_point_census(f"Z/{args.q}", n, capped(census.DEFAULT_WORK_BUDGET)).cycles)
            rows.append(({"n": n}, parity.cycle_count(args.q, n), oracle))
    elif args.domain == "z2":
        if args.n is None:
            raise UsageError("count z2 needs --n")
        for n in parse_range(args.n):
            if args.condensed:
                value = dyadic.condensed_cycle_count(n)

                def oracle(n=n):
                    return len(dyadic.enumerate_condensed_cycles(n, capped(dyadic.DEFAULT_Z2_BUDGET)))
            else:
                value = dyadic.z2_cycle_count(n)

                def oracle(n=n):
                    return len(dyadic.enumerate_z2_cycles(n, capped(dyadic.DEFAULT_Z2_BUDGET)))
            rows.append(({"n": n}, value, oracle))
    return rows


def cmd_count(args) -> int:
    if args.domain == "ledger":
        if args.q is None or args.n is None:
            raise UsageError("count ledger needs --q and --n (largest n)")
        ns = parse_range(args.n)
        led = parity.CountLedger.build(args.q, max(ns))
        if args.json:
            print(json.dumps({"q": args.q, "rows": [dict(zip("n e j i Z".split(), r)) for r in led.rows]}))
        else:
            sys.stdout.write(led.to_csv())
        return EXIT_OK
    rows = _count_rows(args)
    out = []
    failed = unverified = False
    for keys, value, oracle in rows:
        row = dict(keys, count=value)
        if args.verify:
            try:
                got = oracle()
            except BudgetExceeded:
                row["status"] = "unverified"
                unverified = True
            else:
                row["oracle"] = got
                row["status"] = "verified" if got == value else "mismatch"
                failed |= got != value
        out.append(row)
    if args.json:
        print(json.dumps({"domain": args.domain, "rows": out}))
    else:
        cols = list(out[0]) if out else []
        print(",".join(cols))
        for row in out:
            print(",".join(str(row.get(c, "")) for c in cols))
    if failed:
        return EXIT_VERIFY
    if unverified and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_census(args) -> int:
    ring = make_ring(args.ring)
    budget = capped(args.budget)
    if args.matrix is not None:
        table = census.matrix_census(ring, args.matrix, budget)
    else:
        if args.degree_cap is None:
            raise UsageError("census needs --degree-cap or --matrix")
        table = census.brute_force_census(ring, args.degree_cap, budget)
    if args.json:
        print(table.to_json())
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def cmd_construct(args) -> int:
    vec = parse_vector(args.vec if args.domain == "series" else args.bits)
    if args.domain == "series":
        if args.ring is None:
            raise UsageError("construct series needs --ring")
        ring = make_ring(args.ring)
        vec = tuple(ring.parse_element(a) for a in vec)
        mode = "condensed" if args.condensed else "full"
        if args.condensed:
            f = series.periodic_from_parity(ring, vec)
        else:
            _require_cyclic(vec)
            f = series.periodic_from_cyclic_parity(ring, vec)
        rederived = series.parity_vector(f, len(vec), mode)
        cycle = series.series_orbit(f, capped(series.DEFAULT_SERIES_BUDGET)).cycle
        label, shown_vec, shown_back = ring.spec, [ring.format_element(a) for a in vec], \
            [ring.format_element(a) for a in rederived]
    else:
        mode = "condensed" if args.condensed else "full"
        if args.condensed:
            f = dyadic.periodic_from_parity_z2(vec)
        else:
            _require_cyclic(vec)
            f = dyadic.periodic_from_cyclic_bits(vec)
        rederived = dyadic.z2_parity_vector(f, len(vec), mode)
        cycle = dyadic.rational_orbit(f, capped(10_000)).cycle
        label, shown_vec, shown_back = "Z2", list(vec), list(rederived)
    match = tuple(shown_vec) == tuple(shown_back)
    payload = {"domain": args.domain, "ring": label, "map": mode, "vector": shown_vec,
               "point": render(f), "parity_rederived": shown_back, "parity_matches": match,
               "full_cycle": [render(g) for g in cycle], "full_cycle_length": len(cycle)}
    lines = [f"point: {text(f)}", f"parity ({mode} map): {shown_back} "
             + ("matches" if match else "DOES NOT MATCH"),
             f"full-map cycle (length {len(cycle)}): " + " -> ".join(text(g) for g in cycle)]
    emit(args, payload, lines)
    return EXIT_OK if match else EXIT_VERIFY


def _require_cyclic(vec):
    if not vec or not parity.is_cyclically_zero_dense(vec):
        raise UsageError(
            f"{list(vec)} is not cyclically zero-dense, so no full-map periodic point has it "
            "as parity vector; use --condensed to build from a condensed-map vector")


def cmd_parity(args) -> int:
    if args.vec is not None:
        vec = parse_vector(args.vec)
        zd = parity.is_zero_dense(vec)
        payload = {"vector": list(vec), "zero_dense": zd,
                   "cyclically_zero_dense": parity.is_cyclically_zero_dense(vec),
                   "expanded": list(parity.expand(vec))}
        if zd and vec[-1] in (0, ()):
            payload["condensed"] = list(parity.condense(vec))
        emit(args, payload, [f"{k}: {json.dumps(v)}" for k, v in payload.items()])
        return EXIT_OK
    if args.n is None:
        raise UsageError("parity of an object needs --n")
    kind, ring, f = _object(args)
    which = "condensed" if args.condensed else "full"
    if kind == "series":
        vec = [ring.format_element(a) for a in series.parity_vector(f, args.n, which)]
    elif kind == "rational":
        vec = list(dyadic.z2_parity_vector(f, args.n, which))
    else:
        raise UsageError("parity vectors are defined for --series and --rational objects")
    payload = {"ring": _ring_label(kind, ring), "start": render(f), "map": which, "parity": vec}
    emit(args, payload, [json.dumps(vec)])
    return EXIT_OK


def cmd_valuation(args) -> int:
    kind = args.kind
    if kind == "digits":
        if args.rational is None or args.m is None:
            raise UsageError("valuation digits needs --rational and --m")
        bits = dyadic.dyadic_digits(args.rational, args.m)
        payload = {"rational": args.rational, "m": args.m, "digits": list(bits)}
        emit(args, payload, [json.dumps(list(bits))])
        return EXIT_OK
    if kind in ("threshold", "equivalence"):
        if args.char is None or args.n is None:
            raise UsageError(f"valuation {kind} needs --char and --n")
        cf = characteristic_factorization(make_ring(f"Z/{args.char}"))
        if kind == "threshold":
            value = valuation.threshold_constant(cf, args.n)
            payload = {"char": args.char, "n": args.n, "K": value}
            emit(args, payload, [str(value)])
            return EXIT_OK
        if args.k is None:
            raise UsageError("valuation equivalence needs --k")
        s1, s2 = valuation.divisibility_equivalence_check(cf, args.n, args.k)
        payload = {"char": args.char, "n": args.n, "k": args.k,
                   "threshold_divides_k": s1, "char_divides_binomials": s2}
        emit(args, payload, [f"K(n) | k: {s1}", f"N | C(k, j) for 1 <= j <= n: {s2}"])
        return EXIT_OK if s1 == s2 else EXIT_VERIFY
    if args.p is None or args.n is None:
        raise UsageError(f"valuation {kind} needs --p and --n")
    if kind == "vp":
        value = valuation.vp(args.p, args.n)
    elif kind == "digit-sum":
        value = valuation.digit_sum(args.p, args.n)
    elif kind == "binom":
        if args.m is None:
            raise UsageError("valuation binom needs --m")
        value = valuation.binom_valuation(args.p, args.n, args.m)
    else:
        if args.a is None:
            raise UsageError("valuation difference needs --a")
        value = valuation.valuation_difference(args.p, args.a, args.n)
    payload = {"kind": kind, "p": args.p, "n": args.n, "value": value}
    for extra in ("m", "a"):
        if getattr(args, extra) is not None:
            payload[extra] = getattr(args, extra)
    emit(args, payload, [str(value)])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(suites.SUITES)}")
    checks = suites.run_suite(args.suite, args.seed)
    ok = all(c.passed for c in checks)
    payload = {"suite": args.suite, "seed": args.seed, "passed": ok,
               "checks": [c.to_json() for c in checks]}
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in checks]
    lines.append(f"{args.suite}: {'pass' if ok else 'FAIL'}")
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="machine-readable output")
    top.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    # Repeated on every subcommand; SUPPRESS keeps a flag given before the
    # subcommand from being reset by the subparser's own default.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="ringcollatz", parents=[top],
                     description="Collatz-type maps over rings, power series and 2-adic rationals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def objects(p, poly_only=False):
        p.add_argument("--ring", help="ring: Z, Z/N, F<q>, F<p>[t] or F<q>=F<p>[y]/(poly)")
        p.add_argument("--poly", help="polynomial as a JSON coefficient list, constant term first")
        if not poly_only:
            p.add_argument("--series", help='series as JSON {"u": [...], "v": [...]} meaning u/(1+x v)')
            p.add_argument("--rational", help="2-adic rational a/b with b odd")

    p = sub.add_parser("orbit", parents=[common], help="iterate the map until it cycles")
    objects(p)
    p.add_argument("--budget", type=int, help="maximum pre-period + period")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--condensed", action="store_true", help="use (3f+1)/2 for rationals")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("period", parents=[common], help="exact period of a polynomial")
    objects(p, poly_only=True)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("is-periodic", parents=[common], help="decide periodicity of a polynomial")
    objects(p, poly_only=True)
    p.add_argument("--limit", type=int, default=poly.DEFAULT_K_LIMIT)
    p.set_defaults(func=cmd_is_periodic)

    p = sub.add_parser("count", parents=[common], help="cycle-count tables")
    p.add_argument("domain", choices=["fq", "series", "z2", "ledger"])
    p.add_argument("--q", type=int)
    p.add_argument("--k", help="range of k for fq (lengths 2p^k)")
    p.add_argument("--n", help="cycle length or range, e.g. 1..10")
    p.add_argument("--condensed", action="store_true", help="z2: count condensed-map cycles")
    p.add_argument("--verify", action="store_true", help="check each row against enumeration")
    p.add_argument("--strict", action="store_true", help="exit 2 if any row could not be verified")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("census", parents=[common], help="cycle census of polynomials over a finite ring")
    p.add_argument("--ring", required=True)
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--matrix", type=int, metavar="K", help="finite fields: use the B_k construction")
    p.add_argument("--budget", type=int, default=census.DEFAULT_WORK_BUDGET)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", parents=[common], help="periodic point from a parity vector")
    p.add_argument("domain", choices=["series", "z2"])
    p.add_argument("--ring")
    p.add_argument("--vec", help="series: JSON list of ring elements")
    p.add_argument("--bits", help="z2: bit string such as 100")
    p.add_argument("--condensed", action="store_true", help="treat the vector as a condensed-map vector")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("parity", parents=[common], help="parity vectors and zero-density")
    objects(p)
    p.add_argument("--n", type=int)
    p.add_argument("--vec", help="analyse a vector instead of an object")
    p.add_argument("--condensed", action="store_true")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("valuation", parents=[common], help="p-adic valuations and binomial divisibility")
    p.add_argument("kind", choices=["vp", "digit-sum", "binom", "difference", "threshold",
                                    "equivalence", "digits"])
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--char", type=int, help="characteristic N")
    p.add_argument("--rational")
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="all, " + ", ".join(suites.SUITES))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, CollatzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
