"""``scalerep`` command line: eval, check, compose, gauge, wyz.

Exit codes: 0 success or passing check, 1 check with failures, 2 usage,
parse or domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence

from .axioms import SUITES, CheckReport, run_substructure_suite, run_wyz_control
from .convergence import DEFAULT_CAP, DEFAULT_EPS, SEQUENCES, run_convergence_check, run_limit_mapping
from .errors import BudgetExceeded, ParseError, ScaleRepError
from .evaluate import eval_base, eval_external, eval_internal
from .exact import format_value, parse_rational, parse_value
from .gauge import FIELDS, run_demo
from .structures import NumberType, group_op, parse_structure
from .terms import parse_term

CHECK_SUITES = (*SUITES, "substructure", "convergence", "limit")


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("SCALEREP_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SCALEREP_SEED must be an integer, got {raw!r}") from None


def _binding(text: str) -> tuple[str, object]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise UsageError(f"--bind expects NAME=VALUE, got {text!r}")
    try:
        return name.strip(), parse_value(value)
    except ValueError as exc:
        raise UsageError(f"--bind {text!r}: {exc}") from None


def cmd_eval(args) -> int:
    term = parse_term(args.expr)
    env = dict(_binding(b) for b in args.bind)
    s = parse_structure(args.struct)
    if args.view == "base":
        value = eval_base(term, env)
    elif args.view == "external":
        value = eval_external(term, env, s)
    else:
        value = eval_internal(term, env, s).internal
    print(format_value(value))
    return 0


def _summary(report: CheckReport, limit: int = 10) -> str:
    verdict = "PASS" if report.passed else "FAIL"
    lines = [
        f"{verdict} {report.suite} {report.structure} "
        f"cases={report.cases} failures={len(report.failures)} seed={report.seed}"
    ]
    if report.witness:
        lines.append(f"witness: {report.witness}")
    for f in report.failures[:limit]:
        binds = ", ".join(f"{k}={v}" for k, v in f.bindings.items())
        lines.append(f"  {f.axiom} [{f.view}] {binds}: {f.lhs} != {f.rhs}")
    if len(report.failures) > limit:
        lines.append(f"  ... {len(report.failures) - limit} more")
    return "\n".join(lines)


def _emit(report: CheckReport, as_json: bool) -> int:
    print(report.to_json() if as_json else _summary(report))
    return 0 if report.passed else 1


def cmd_check(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    s = parse_structure(args.struct)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    suite = args.suite
    if suite in SUITES:
        report = SUITES[suite](s, args.samples, seed)
    elif suite == "substructure":
        if s.number_type is not NumberType.COMPLEX:
            raise UsageError("the substructure suite needs a cpx structure")
        report = run_substructure_suite(s.scale, args.samples, seed)
    else:
        if s.number_type not in (NumberType.RATIONAL, NumberType.REAL):
            raise UsageError(f"the {suite} check needs a rat or real structure")
        eps = [parse_rational(e) for e in args.eps] if args.eps else list(DEFAULT_EPS)
        if suite == "convergence":
            report = run_convergence_check(args.sequence, s.scale.re, eps, args.cap)
        else:
            report = run_limit_mapping(args.sequence, s.scale.re, None, eps, args.cap)
        report.seed = seed
    return _emit(report, args.json)


def cmd_compose(args) -> int:
    if len(args.structures) < 2:
        raise UsageError("compose needs at least two structure literals")
    handles = [parse_structure(t) for t in args.structures]
    out = handles[0]
    for h in handles[1:]:
        out = group_op(out, h)
    print(out.literal)
    return 0


def cmd_gauge(args) -> int:
    report = run_demo(args.dims, args.sites, args.dx, args.potential, args.field)
    print(json.dumps(report, indent=2, ensure_ascii=False))
    return 0


def cmd_wyz(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    w, y, z = (parse_value(v) for v in (args.w, args.y, args.z))
    return _emit(run_wyz_control(w, y, z, args.samples, seed), args.json)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scalerep", description="Scaled number structures.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="evaluate a term in one view of a structure")
    p.add_argument("--expr", required=True)
    p.add_argument("--bind", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--struct", default="rat:r=1")
    p.add_argument("--view", choices=("base", "external", "internal"), default="external")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run an axiom suite or convergence check")
    p.add_argument("--suite", required=True, choices=CHECK_SUITES)
    p.add_argument("--struct", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--sequence", choices=tuple(SEQUENCES), default="harmonic")
    p.add_argument("--eps", action="append", default=[], metavar="RATIONAL")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compose", help="compose scalings of one number type")
    p.add_argument("structures", nargs="*")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("gauge", help="lattice derivative demo (JSON)")
    p.add_argument("--dims", type=int, default=1)
    p.add_argument("--sites", type=int, default=64)
    p.add_argument("--dx", type=float, default=0.1)
    p.add_argument("--potential", default="sine:amp=0.2,period=16")
    p.add_argument("--field", choices=FIELDS, default="transport")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("wyz", help="homogeneity control for {+, -, */w, y/, 0, z}")
    p.add_argument("--w", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_wyz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        # a divergent sequence is a failed check, not a usage error
        print(f"FAIL budget exceeded in {', '.join(exc.views)}: {exc}")
        return 1
    except ParseError as exc:
        print(f"scalerep: parse error: {exc}", file=sys.stderr)
    except (UsageError, ScaleRepError, ValueError, TypeError, KeyError) as exc:
        print(f"scalerep: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
