"""
Command-line front end.

Subcommands: ``trace`` (sweep an annulus and emit CSV), ``construct``
(build a certified polynomial family), ``certify`` (certificate for a
given odd part), ``verify`` (run the invariant suites), ``plot``
(render a trace CSV as SVG).

Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 monomial input, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import verify as verify_mod
from .circlemax import VALUE_TIE_REL, RootFindingError
from .construct import ConstructionKind, ConstructionSpec, build, certify_a
from .serialize import (
    PolynomialFormatError,
    certificate_to_obj,
    dump_certificate,
    dump_polynomial,
    load_polynomial,
)
from .svgplot import render_csv
from .tracer import (
    CHAIN_CONSTANT,
    WATCH_REL,
    AnnulusWindow,
    detect_discontinuities,
    detect_singletons,
    trace,
    write_csv,
)

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_PARSE = 2
EXIT_MONOMIAL = 3
EXIT_NUMERICAL = 4


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="maxmodset",
        description="maximum modulus sets of complex polynomials",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("trace", help="trace the maximum modulus set over an annulus")
    tr.add_argument("--poly", required=True, help="polynomial JSON file")
    tr.add_argument("--rmin", type=float, required=True)
    tr.add_argument("--rmax", type=float, required=True)
    tr.add_argument("--steps", type=int, default=2000)
    tr.add_argument("--out", required=True, help="output CSV path")
    tr.add_argument("--spacing", choices=("auto", "uniform", "geometric"),
                    default="auto")
    tr.add_argument("--tie-rel", type=float, default=VALUE_TIE_REL,
                    help="relative tie tolerance for maximizers")
    tr.add_argument("--watch-rel", type=float, default=WATCH_REL,
                    help="relative deficit for near-tie tracking")
    tr.add_argument("--chain-constant", type=float, default=CHAIN_CONSTANT,
                    help="angular chaining slope constant")

    co = sub.add_parser("construct", help="build a certified polynomial family")
    co.add_argument("--kind", choices=("t1", "t2"), required=True,
                    help="t1: prescribed discontinuities; t2: prescribed singletons")
    co.add_argument("--targets", required=True,
                    help="comma-separated positive radii, e.g. 0.5,1,2")
    co.add_argument("--theta0", type=float, default=float(np.pi / 8))
    co.add_argument("--out-poly", required=True)
    co.add_argument("--out-cert", required=True)

    ce = sub.add_parser("certify", help="certificate for a given odd part")
    ce.add_argument("--poly-hat", required=True, help="odd-part polynomial JSON file")
    ce.add_argument("--R", type=float, required=True)
    ce.add_argument("--Rprime", type=float, required=True)
    ce.add_argument("--theta0", type=float, default=float(np.pi / 8))
    ce.add_argument("--out-cert", help="optional certificate JSON path")

    ve = sub.add_parser("verify", help="run the invariant suites")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--corrupt-tolerance", action="store_true",
                    help=argparse.SUPPRESS)

    pl = sub.add_parser("plot", help="render a trace CSV as SVG")
    pl.add_argument("--csv", required=True)
    pl.add_argument("--out", required=True)
    return ap


def _cmd_trace(args) -> int:
    try:
        p = load_polynomial(args.poly)
    except (OSError, PolynomialFormatError) as exc:
        print(f"error: cannot read polynomial: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        window = AnnulusWindow(args.rmin, args.rmax, args.steps, args.spacing)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if p.is_zero or p.is_monomial:
        print("error: monomial polynomial, the maximum modulus set is the whole plane",
              file=sys.stderr)
        return EXIT_MONOMIAL
    try:
        s = trace(p, window, tie_rel=args.tie_rel, watch_rel=args.watch_rel,
                  chain_constant=args.chain_constant)
    except RootFindingError as exc:
        print(f"error: numerical failure at radius {exc.radius}: {exc.detail}",
              file=sys.stderr)
        return EXIT_NUMERICAL
    write_csv(s, args.out)
    discs = detect_discontinuities(s)
    singles = detect_singletons(s)
    print(f"components: {len(s.components)}")
    print("discontinuity moduli:",
          " ".join(f"{d.modulus:.9g}" for d in discs) if discs else "none")
    print("singletons:",
          " ".join(f"(r={r:.9g}, theta={t:.9g})" for r, t in singles)
          if singles else "none")
    if len(s.full_circle_radii):
        print("full-circle radii:",
              " ".join(f"{r:.9g}" for r in s.full_circle_radii))
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    try:
        targets = tuple(float(x) for x in args.targets.split(",") if x.strip())
        spec = ConstructionSpec(targets, ConstructionKind(args.kind), args.theta0)
    except ValueError as exc:
        print(f"error: invalid targets: {exc}", file=sys.stderr)
        return EXIT_PARSE
    p, cert = build(spec)
    dump_polynomial(p, args.out_poly)
    dump_certificate(cert, args.out_cert)
    print(f"a_cert: {cert.a_cert:.9g}")
    print(f"degree: {p.degree}")
    print(f"annulus: [{cert.R:.9g}, {cert.R_prime:.9g}]")
    print(f"wrote {args.out_poly} and {args.out_cert}")
    return EXIT_OK


def _cmd_certify(args) -> int:
    try:
        p_hat = load_polynomial(args.poly_hat)
    except (OSError, PolynomialFormatError) as exc:
        print(f"error: cannot read polynomial: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        cert = certify_a(p_hat, args.R, args.Rprime, args.theta0)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(certificate_to_obj(cert), indent=2))
    if args.out_cert:
        dump_certificate(cert, args.out_cert)
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify_mod.run_all(seed=args.seed,
                                 corrupt_tolerance=args.corrupt_tolerance)
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:24s} {r.detail}")
        all_ok = all_ok and r.passed
    return EXIT_OK if all_ok else EXIT_SUITE_FAIL


def _cmd_plot(args) -> int:
    try:
        render_csv(args.csv, args.out)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot render {args.csv}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    handlers = {
        "trace": _cmd_trace,
        "construct": _cmd_construct,
        "certify": _cmd_certify,
        "verify": _cmd_verify,
        "plot": _cmd_plot,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
