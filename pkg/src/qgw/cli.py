"""qgw command-line interface.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on
configuration, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError, DSLSyntaxError, QGWError
from .expr import parse_rational
from .hopf import derive_relations, t_matrix
from .linalg import ORDERS, Matrix, from_lex, matrix_to_json
from .morphism import MorphismSpec, check_morphism, derive_image_relations
from .ncpoly import format_ncpoly
from .presentations import catalog, load_presentation
from .rmatrix import PLANS, contract, load_rmatrix, qybe_check, triangularity_check
from .scalar import Scalar
from .suites import CHECKS, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def parse_params(text: str | None) -> dict:
    """``"r=2,s=3/2"`` -> {"r": Scalar(2), "s": Scalar(3/2)}; rational values only."""
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"--params expects name=value pairs, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        try:
            out[name] = Scalar(parse_rational(value))
        except (ValueError, ZeroDivisionError, DSLSyntaxError) as exc:
            raise ConfigError(f"--params value for {name} must be rational: {exc}") from None
    return out


def instantiate(subject, bindings: dict):
    """Substitute rational parameter values into a Scalar, matrix or NCPoly (exact)."""
    if not bindings:
        return subject
    if isinstance(subject, Matrix):
        return subject.substitute(bindings)
    if isinstance(subject, Scalar):
        return subject.substitute(bindings)
    from .ncpoly import NCPoly

    if isinstance(subject, NCPoly):
        return NCPoly({w: c.substitute(bindings) for w, c in subject.terms.items()}, subject.alphabet)
    raise ConfigError(f"cannot instantiate {type(subject).__name__}")


def _emit_reports(reports, args) -> None:
    if args.json:
        timing = not args.deterministic
        doc = {
            "status": "pass" if all(r.passed for r in reports) else "fail",
            "reports": [r.to_dict(timing) for r in reports],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.summary() if not args.deterministic else r.summary().replace(f" ({r.elapsed_ms} ms)", ""))
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} checks passed")


def _presentation(args):
    if getattr(args, "file", None):
        return load_presentation(args.file)
    return catalog(args.algebra)


# commands ----------------------------------------------------------------------------


def cmd_check(args) -> int:
    names = list(CHECKS) if args.name == "all" or args.paper else [args.name]
    if args.name not in ("all",) + CHECKS:
        raise ConfigError(f"unknown check {args.name!r}; known: all, {', '.join(CHECKS)}")
    algebras = tuple(args.algebra) if args.algebra else ("Grs", "Gmk")
    for a in algebras:
        catalog(a)
    Ns = tuple(args.N) if args.N else (1, 2, 3)
    cfg = SuiteConfig(tuple(names), algebras=algebras, Ns=Ns, samples=args.samples,
                      mutations=not args.no_mutations)
    reports, code = run_suite(cfg, parallel=args.parallel)
    _emit_reports(reports, args)
    return code


def cmd_normalize(args) -> int:
    p = _presentation(args)
    if args.order:
        p = p.with_order([g.strip() for g in args.order.split("<")])
    bindings = parse_params(args.params)
    x = instantiate(p.element(args.expr), bindings)
    if bindings:
        p = p.substitute(bindings)
    trace = [] if args.trace else None
    nf = p.normalize(x, strategy=args.strategy, trace=trace)
    if trace is not None:
        for i, step in enumerate(trace, 1):
            print(f"{i:4d}  {step}")
    print(format_ncpoly(nf))
    return EXIT_OK


def _rmatrix(args):
    entry = load_rmatrix(args.name)
    R = instantiate(entry.lex(), parse_params(args.params))
    return entry, R


def cmd_rmatrix(args) -> int:
    if args.action == "contract":
        return cmd_contract(args)
    if not args.name:
        raise ConfigError(f"rmatrix {args.action} needs an R-matrix name")
    entry, R = _rmatrix(args)
    if args.action == "show":
        order = args.order or entry.order
        if order not in ORDERS:
            raise ConfigError(f"unknown index order {order!r}; known: {', '.join(ORDERS)}")
        shown = from_lex(R, order)
        if args.json:
            print(json.dumps(matrix_to_json(shown, name=entry.name, order=order), indent=2))
        else:
            print(f"{entry.name} ({shown.rows}x{shown.cols}, {order} order)")
            print(shown)
        return EXIT_OK
    check = qybe_check if args.action == "qybe" else triangularity_check
    report = check(R, entry.name + (f" at {args.params}" if args.params else ""))
    _emit_reports([report], args)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_contract(args) -> int:
    plan = args.plan or "paper9"
    if plan not in PLANS:
        raise ConfigError(f"unknown plan {plan!r}; known: {', '.join(PLANS)}")
    bindings = parse_params(args.params)
    result = contract(plan, bindings or None)
    source = load_rmatrix(PLANS[plan]().source)
    if args.emit == "json":
        name = {"R_q_blocked": "R_Gmk", "R_GLr2": "R_h2"}.get(source.name, "contracted")
        print(json.dumps(matrix_to_json(result, name=name, order=source.order), indent=2))
    else:
        print(f"limit of plan {plan} ({result.rows}x{result.cols}, {source.order} order)")
        print(result)
    return EXIT_OK


def cmd_derive(args) -> int:
    p = _presentation(args)
    name = args.rmatrix or {"Grs": "R_Grs", "Gmk": "R_Gmk", "GLr2": "R_GLr2", "GLh2": "R_h2"}.get(p.name)
    if name is None:
        raise ConfigError(f"no R-matrix paired with {p.name}; pass --rmatrix")
    R = load_rmatrix(name).lex()
    for rel in derive_relations(R, t_matrix(p), p):
        print(f"{format_ncpoly(rel)} = 0")
    return EXIT_OK


def cmd_morphism(args) -> int:
    p = catalog(args.source)
    reports = []
    for N in args.N or [1]:
        spec = MorphismSpec(p, N)
        if not args.json:
            dp = derive_image_relations(spec)
            print(dp.presentation.to_dsl())
        reports.append(check_morphism(spec))
    _emit_reports(reports, args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_parse(args) -> int:
    p = load_presentation(args.path)
    print(p.to_dsl(), end="")
    return EXIT_OK


# parser ---------------------------------------------------------------------------------


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON reports")
    p.add_argument("--deterministic", action="store_true",
                   help="omit timings so repeated runs produce identical output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgw", description="Exact verification kernel for G_{r,s} and G_{m,k}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run check suites")
    p.add_argument("name", help="a check name or 'all'")
    p.add_argument("--paper", action="store_true", help="run every suite (the full claim set)")
    p.add_argument("--algebra", action="append", help="restrict algebra-level checks (repeatable)")
    p.add_argument("--N", type=int, action="append", help="morphism exponent (repeatable; default 1 2 3)")
    p.add_argument("--samples", type=int, default=1000, help="random words for the normal-form check")
    p.add_argument("--no-mutations", action="store_true", help="skip the mutation (non-vacuity) reports")
    p.add_argument("--parallel", action="store_true", help="run suites in worker processes")
    _output_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="normal form of an element")
    p.add_argument("expr")
    p.add_argument("--algebra", default="Grs")
    p.add_argument("--file", help="presentation DSL file instead of a catalog algebra")
    p.add_argument("--order", help="letter order override, e.g. 'c<a<d<b<f'")
    p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    p.add_argument("--trace", action="store_true", help="print each rewrite step")
    p.add_argument("--params", help="rational parameter values, e.g. r=2,s=3")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("rmatrix", help="show or check a shipped R-matrix")
    p.add_argument("action", choices=("show", "qybe", "triangular", "contract"))
    p.add_argument("name", nargs="?", help="R_Grs, R_q_blocked, R_GLr2, R_Gmk or R_h2")
    p.add_argument("--order", help="index order for show: lex or block9")
    p.add_argument("--params", help="rational parameter values, e.g. r=2,s=3")
    p.add_argument("--plan", help="contraction plan (contract only)")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    _output_flags(p)
    p.set_defaults(func=cmd_rmatrix)

    p = sub.add_parser("contract", help="run a contraction plan")
    p.add_argument("--plan", default="paper9", choices=sorted(PLANS))
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.add_argument("--params", help="specialize path parameters first, e.g. k=0")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("derive-relations", help="relations from R T1 T2 = T2 T1 R")
    p.add_argument("--algebra", default="Gmk")
    p.add_argument("--file", help="presentation DSL file")
    p.add_argument("--rmatrix", help="R-matrix name (default: the one paired with the algebra)")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("morphism", help="derive and check the image of x -> f^N x")
    p.add_argument("--source", default="grs")
    p.add_argument("--N", type=int, action="append")
    _output_flags(p)
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("parse", help="parse a presentation DSL file and print it back")
    p.add_argument("path", type=Path)
    p.set_defaults(func=cmd_parse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DSLSyntaxError as exc:
        print(f"qgw: syntax error: {exc}", file=sys.stderr)
    except (QGWError, ZeroDivisionError) as exc:
        print(f"qgw: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"qgw: {exc.strerror or exc}: {exc.filename or ''}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
