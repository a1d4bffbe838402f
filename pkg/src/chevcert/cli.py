"""Command-line interface.  JSON goes to stdout (or --output), summaries to stderr.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .dynkin import DynkinType, standard_diagram
from .errors import CapExceeded, InternalConsistencyError, RangeError
from .orders import poincare_polynomial
from .polyarith import PrimitivePrimeCertificate, check_primitive_certificate, is_prime_power, poly_eval, zsigmondy_prime
from .sweep import run_sweep
from .verifier import DEFAULT_Q_LIST, SCHEMA_VERSION, dumps, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _prime_power(text: str) -> int:
    try:
        q = int(text)
        is_prime_power(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime power") from None
    return q


def _q_list(text: str) -> tuple[int, ...]:
    return tuple(_prime_power(t) for t in text.split(",") if t.strip())


def _dtype(args, parser) -> DynkinType:
    try:
        return DynkinType(args.family.upper(), args.rank)
    except ValueError as exc:
        parser.error(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chevcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--output", "-o", help="write JSON here instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized subgroup searches")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify every proper W for one diagram and q")
    p.add_argument("--family", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--summary-only", action="store_true", help="omit per-W certificates")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    p = sub.add_parser("sweep", help="verify over all families up to a rank cap and a list of q")
    p.add_argument("--rank-cap", type=int, default=12)
    p.add_argument("--q-list", type=_q_list, default=DEFAULT_Q_LIST)
    p.add_argument("--workers", type=int, default=None, help="defaults to $CHEVCERT_WORKERS or the CPU count")

    p = sub.add_parser("zsigmondy", help="primitive prime divisor of q^r - 1")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("poincare", help="Poincare polynomial of a type or a list of types")
    p.add_argument("types", help="comma-separated types, e.g. A2 or A1,A4")
    p.add_argument("--q", type=int, default=None, help="also evaluate at q")

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="oracle", required=True)
    g = osub.add_parser("gl", help="enumerate GL(n, q) and check its parabolics")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--q", type=_prime_power, required=True)
    g.add_argument("--cap", type=int, default=20160)
    g = osub.add_parser("gaplist", help="verify the factorization list")
    g.add_argument("--entry", default="all", choices=["all", "a6", "a8", "m12", "c2_4", "c3_2"])
    g.add_argument("--full-m12", action="store_true", help="build M12 and verify it in full")
    return parser


def _emit(doc, args):
    text = dumps(doc) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _log(msg):
    print(msg, file=sys.stderr)


def cmd_verify(args, parser) -> int:
    dtype = _dtype(args, parser)
    report = verify_all(standard_diagram(dtype), args.q)
    doc = report.to_json(include_verdicts=not args.summary_only, include_timing=args.timing)
    doc["command"] = "verify"
    _emit(doc, args)
    _log(f"{dtype}({args.q}): {len(report.verdicts)} verdicts {report.counts}" + (f" [{report.note}]" if report.note else ""))
    if report.failures:
        _log(f"first failing certificate: {report.failures[0]}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    if args.rank_cap < 2:
        parser.error("--rank-cap must be at least 2")
    summary = run_sweep(args.q_list, args.rank_cap, workers=args.workers)
    _emit(summary.to_json(), args)
    _log(f"sweep: {summary.verdicts} verdicts {summary.totals()}, {len(summary.failures)} failures")
    if summary.failures:
        _log(f"first failing certificate: {summary.failures[0]}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_zsigmondy(args, parser) -> int:
    if args.q < 2 or args.r <= 2:
        parser.error("need q >= 2 and r > 2")
    result = zsigmondy_prime(args.q, args.r)
    doc = {"schema_version": SCHEMA_VERSION, "command": "zsigmondy", "q": str(args.q), "r": args.r}
    if isinstance(result, PrimitivePrimeCertificate):
        problem = check_primitive_certificate(result)
        doc.update(result=result.to_json(), check="accept" if problem is None else f"reject: {problem}")
        _log(f"primitive prime of {args.q}^{args.r}-1: {result.p}")
        code = EXIT_OK if problem is None else EXIT_FAIL
    else:
        doc.update(result=result.to_json(), statement="2^6-1 = 63 = 9*7 = (2^2-1)^2 (2^3-1)")
        _log("no primitive prime: (2, 6) is the Zsigmondy exception, 63 = 9*7")
        code = EXIT_OK
    _emit(doc, args)
    return code


def cmd_poincare(args, parser) -> int:
    try:
        types = [DynkinType.parse(t.strip()) for t in args.types.split(",") if t.strip()]
    except (ValueError, IndexError) as exc:
        parser.error(f"bad type list {args.types!r}: {exc}")
    f = poincare_polynomial(types)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "poincare",
        "types": [str(t) for t in types],
        "coefficients": [str(c) for c in f.coeffs],
        "text": str(f),
    }
    if args.q is not None:
        doc["q"] = str(args.q)
        doc["value"] = str(poly_eval(f, args.q))
    _emit(doc, args)
    _log(str(f))
    return EXIT_OK


def cmd_oracle(args, parser) -> int:
    if args.oracle == "gl":
        from .oracle.glcheck import gl_report

        if args.n < 2:
            parser.error("--n must be at least 2")
        report = gl_report(args.n, args.q, cap=args.cap)
        doc = {"schema_version": SCHEMA_VERSION, "command": "oracle gl", "report": report}
        _emit(doc, args)
        _log(f"GL({args.n},{args.q}): |G|={report['order']} |B|={report['borel_order']} |G|/|B|={report['index_G_over_B']}")
        return EXIT_OK if report["ok"] else EXIT_FAIL

    from .oracle.gaplist import ENTRIES, verify_gap_entry

    entries = ENTRIES if args.entry == "all" else (args.entry,)
    reports = [verify_gap_entry(e, seed=args.seed, full_m12=args.full_m12) for e in entries]
    doc = {"schema_version": SCHEMA_VERSION, "command": "oracle gaplist", "seed": args.seed, "entries": [r.to_json() for r in reports]}
    _emit(doc, args)
    for r in reports:
        _log(f"{r.entry}: {r.mode} {'ok' if r.ok else 'FAILED'}" + (f" {r.diagnostics}" if r.diagnostics else ""))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "zsigmondy": cmd_zsigmondy,
    "poincare": cmd_poincare,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (CapExceeded, RangeError) as exc:
        _log(f"resource cap: {exc}")
        return EXIT_CAP
    except InternalConsistencyError as exc:
        _log(f"verification failure: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
