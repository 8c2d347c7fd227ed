"""
cli/app.py — shiftlab command line

    python -m cli classify --builtin ex1 --window 8x8
    python -m cli power --builtin ex1 -m 2 -n 1
    python -m cli counterexample --s 0 --u 1/2 --check
    python -m cli momentmatrix --builtin thm4:1/2,1 --order 2 --format json

Exit codes: 0 analysis done (whatever the verdicts), 1 input or format
error, 2 commutativity violation, 3 unsupported request.
"""
import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Tuple

import mpmath

from cli.builtins import BUILTIN_NAMES, builtin_diagram, builtin_measure
from cli.formatting import render
from core.config import DEFAULT_MOMENT_ORDER, DEFAULT_WINDOW, LOG_LEVEL, resolve_precision
from core.errors import CommutativityError, InputError, IterationExhausted, ShiftLabError
from core.rationals import format_rational
from shifts.aluthge import (
    SPHERICAL, TORAL, is_spherical_fixed_point, is_toral_fixed_point, iterate,
    max_relative_deviation, toral_transform_commutes, toral_transform_commutes_numerically,
    transforms_agree,
)
from shifts.berger import (
    AtomicMeasure, build_counterexample, corollary41_deficit, shift_from_measure, theorem4_measure,
    two_atom_conditions,
)
from shifts.classify import classify, is_spherically_quasinormal, is_spherically_quasinormal_by_moments
from shifts.lattice import WeightDiagram, lattice_moments_table
from shifts.moments import (
    BiMomentSequence, build_moment_matrix, column_relations, flat_extension, flatness_profile,
    lattice_to_bivariate, psd_exact, rank_exact, recover_atoms, sequence_from_measure,
)
from shifts.powers import power_spherical_report
from tools.file_formats import (
    diagram_from_dict, diagram_to_dict, dumps, measure_from_dict, read_json, sequence_from_dict,
    write_json,
)
from tools.report_storage import ReportStorage

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Usage errors become InputError (exit 1) instead of argparse's exit 2."""

    def error(self, message):
        raise InputError(message)


# ═══════════════════════════════════════════════════
# INPUTS
# ═══════════════════════════════════════════════════

def parse_window(text: Optional[str]) -> Tuple[int, int]:
    if text is None:
        return DEFAULT_WINDOW
    try:
        n1, n2 = text.lower().split("x")
        return int(n1), int(n2)
    except ValueError:
        raise InputError(f"window must look like N1xN2 (e.g. 8x8), got {text!r}")


def _source(args) -> Tuple[str, object]:
    if args.builtin and args.input:
        raise InputError("pass either --builtin or --input, not both")
    if args.input:
        data = read_json(args.input)
        if not isinstance(data, dict):
            raise InputError(f"{args.input} must hold a JSON object")
        if "atoms" in data:
            return "measure", measure_from_dict(data)
        if "gamma" in data:
            return "sequence", sequence_from_dict(data)
        return "diagram", diagram_from_dict(data)
    if args.builtin:
        return "builtin", args.builtin
    raise InputError(f"pass --builtin ({', '.join(BUILTIN_NAMES)}) or --input PATH")


def _diagram(args) -> WeightDiagram:
    kind, obj = _source(args)
    window = parse_window(args.window)
    if kind == "builtin":
        return builtin_diagram(obj, window)
    if kind == "measure":
        return shift_from_measure(obj, window)
    if kind == "sequence":
        raise InputError("this command needs a weight diagram or a measure, not a moment sequence")
    return obj.with_window(window) if args.window else obj


def _measure(args) -> AtomicMeasure:
    kind, obj = _source(args)
    if kind == "builtin":
        mu = builtin_measure(obj)
        if mu is None:
            raise InputError(f"builtin {obj!r} has no closed-form atomic measure")
        return mu
    if kind != "measure":
        raise InputError("this command needs a measure ({\"atoms\": [...]})")
    return obj


def _sequence(args) -> BiMomentSequence:
    kind, obj = _source(args)
    if kind == "sequence":
        return obj.truncate(args.order) if args.order is not None and args.order < obj.n else obj
    order = DEFAULT_MOMENT_ORDER if args.order is None else args.order
    if order < 0:
        raise InputError("--order must be nonnegative")
    if kind == "builtin":
        mu = builtin_measure(obj)
        if mu is not None:
            return sequence_from_measure(mu, order)
        d = builtin_diagram(obj, (2 * order + 1, 2 * order + 1))
    elif kind == "measure":
        return sequence_from_measure(obj, order)
    else:
        d = obj.with_window((2 * order + 1, 2 * order + 1))
    return lattice_to_bivariate(lattice_moments_table(d), order)


def _describe(d: WeightDiagram) -> Dict:
    return {"kind": d.kind, "window": list(d.window), "tail_rule": d.tail_rule.value}


# ═══════════════════════════════════════════════════
# COMMANDS
# ═══════════════════════════════════════════════════

def cmd_classify(args) -> Dict:
    d = _diagram(args)
    return {"diagram": _describe(d), **classify(d).to_dict()}


def cmd_moments(args) -> Dict:
    d = _diagram(args)
    table = lattice_moments_table(d)
    n1, n2 = d.window
    return {
        "diagram": _describe(d),
        "moments": [[format_rational(table[(k1, k2)]) for k1 in range(n1)] for k2 in range(n2)],
        "spherical_by_moments": is_spherically_quasinormal_by_moments(d).to_dict(),
    }


def cmd_transform(args) -> Dict:
    d = _diagram(args)
    precision = resolve_precision(args.precision)
    numeric = toral_transform_commutes_numerically(d, precision)
    report = {
        "diagram": _describe(d),
        "precision": precision,
        "exact": {
            "toral_fixed": is_toral_fixed_point(d).to_dict(),
            "spherical_fixed": is_spherical_fixed_point(d, precision).to_dict(),
            "transforms_agree": transforms_agree(d).to_dict(),
            "toral_transform_commutes": toral_transform_commutes(d).to_dict(),
        },
        "numeric_toral_commutativity": {"holds": numeric.holds,
                                        "max_defect": mpmath.nstr(numeric.max_defect, 10)},
    }
    which = [TORAL, SPHERICAL] if args.which == "both" else [args.which]
    for name in which:
        try:
            result = iterate(d, name, args.steps, precision)
            entry = result.to_dict()
        except IterationExhausted as exc:
            result = exc.partial
            entry = dict(result.to_dict(), exhausted=str(exc))
        if result.diagrams:
            entry["first_step_deviation"] = mpmath.nstr(
                max_relative_deviation(result.diagrams[0], d, precision), 10)
        report[name] = entry
    return report


def cmd_power(args) -> Dict:
    d = _diagram(args)
    return power_spherical_report(d, args.m, args.n).to_dict()


def cmd_berger_build(args) -> Dict:
    mu = _measure(args)
    d = shift_from_measure(mu, parse_window(args.window))
    return {"measure": mu.to_dict(), "diagram": diagram_to_dict(d)}


def _berger_check(mu: AtomicMeasure, window: Tuple[int, int]) -> Dict:
    """Two-atom conditions against the exact predicates on the generated shift."""
    conditions = two_atom_conditions(mu)
    d = shift_from_measure(mu, window)
    on_shift = {
        "base": is_spherically_quasinormal(d).holds,
        "pow21": power_spherical_report(d, 2, 1).holds,
        "pow12": power_spherical_report(d, 1, 2).holds,
    }
    expected = {"base": conditions.base, "pow21": conditions.pow21, "pow12": conditions.pow12}
    return {
        "conditions": conditions.to_dict(),
        "on_shift": on_shift,
        "window": list(window),
        "consistent": on_shift == expected,
    }


def cmd_berger_check(args) -> Dict:
    mu = _measure(args)
    return {"measure": mu.to_dict(), **_berger_check(mu, parse_window(args.window))}


def cmd_counterexample(args) -> Dict:
    if args.s is None or args.u is None:
        raise InputError("counterexample needs --s and --u")
    mu = build_counterexample(args.s, args.u)
    first, second = mu.as_sorted()
    report = {"s": format_rational(first.s), "u": format_rational(second.s),
              "t": format_rational(first.t), "v": format_rational(second.t),
              "measure": mu.to_dict()}
    if args.check:
        report["check"] = _berger_check(mu, parse_window(args.window))
    return report


def cmd_momentmatrix(args) -> Dict:
    g = _sequence(args)
    M = build_moment_matrix(g)
    return {
        "n": g.n,
        "matrix": M.to_dict(),
        "psd": psd_exact(M),
        "rank": rank_exact(M),
        "flatness_profile": flatness_profile(g),
        "flat_extension": flat_extension(g) if g.n >= 1 else None,
        "relations": [str(r) for r in column_relations(M)],
    }


def cmd_recover(args) -> Dict:
    g = _sequence(args)
    mu = recover_atoms(g)
    return {"n": g.n, "measure": mu.to_dict(), "probability": mu.probability}


def cmd_demo(args) -> Dict:
    """Every worked example in one report."""
    window = parse_window(args.window)
    ex1 = builtin_diagram("ex1", window)
    power = power_spherical_report(ex1, 2, 1)
    mu3 = build_counterexample(0, "1/2")
    mu4 = theorem4_measure("1/2", 1)
    g = sequence_from_measure(mu4, 2)
    grid = [(x0, q) for x0 in ("1/4", "1/2", "3/4") for q in ("1/2", "1")]
    return {
        "ex1": {
            "spherical": is_spherically_quasinormal(ex1).to_dict(),
            "power_2_1": power.to_dict(),
            "toral_transform_commutes": toral_transform_commutes(ex1).to_dict(),
        },
        "thm3": {"measure": mu3.to_dict(), "conditions": two_atom_conditions(mu3).to_dict()},
        "thm4": {
            "measure": mu4.to_dict(),
            "rank_M1": rank_exact(build_moment_matrix(g, 1)),
            "psd_M1": psd_exact(build_moment_matrix(g, 1)),
            "rank_M2": rank_exact(build_moment_matrix(g, 2)),
            "relations": [str(r) for r in column_relations(build_moment_matrix(g, 2))],
            "recovered": recover_atoms(g).to_dict(),
        },
        "corollary41": {f"{x0},{q}": format_rational(corollary41_deficit(x0, q)) for x0, q in grid},
    }


COMMANDS: Dict[str, Callable] = {
    "classify": cmd_classify,
    "moments": cmd_moments,
    "transform": cmd_transform,
    "power": cmd_power,
    "berger-build": cmd_berger_build,
    "berger-check": cmd_berger_check,
    "counterexample": cmd_counterexample,
    "momentmatrix": cmd_momentmatrix,
    "recover": cmd_recover,
    "demo": cmd_demo,
}


# ═══════════════════════════════════════════════════
# PARSER AND ENTRY POINT
# ═══════════════════════════════════════════════════

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--builtin", help=f"one of {', '.join(BUILTIN_NAMES)}")
    common.add_argument("--input", help="diagram, measure or moment-sequence JSON file")
    common.add_argument("--window", help="N1xN2 (default %dx%d)" % DEFAULT_WINDOW)
    common.add_argument("--precision", type=int, help="mantissa bits for numeric transforms")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--output", help="also write the JSON report (a path, or a name under the reports dir)")
    common.add_argument("--verbose", action="store_true")

    parser = _Parser(prog="shiftlab", description="Exact analysis of 2-variable weighted shifts")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common], help="quasinormality hierarchy")
    sub.add_parser("moments", parents=[common], help="moment table γ_k on the window")

    p = sub.add_parser("transform", parents=[common], help="toral / spherical Aluthge transforms")
    p.add_argument("--which", choices=(TORAL, SPHERICAL, "both"), default="both")
    p.add_argument("--steps", type=int, default=1)

    p = sub.add_parser("power", parents=[common], help="sphericality of W^(m,n)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)

    sub.add_parser("berger-build", parents=[common], help="shift generated by an atomic measure")
    sub.add_parser("berger-check", parents=[common], help="two-atom sphericality conditions")

    p = sub.add_parser("counterexample", parents=[common], help="two-atom counterexample for (s, u)")
    p.add_argument("--s")
    p.add_argument("--u")
    p.add_argument("--check", action="store_true")

    for name in ("momentmatrix", "recover"):
        p = sub.add_parser(name, parents=[common],
                           help="moment matrix M(n)" if name == "momentmatrix" else "atoms of flat data")
        p.add_argument("--order", type=int, default=None)

    sub.add_parser("demo", parents=[common], help="all worked examples")
    return parser


def _configure_logging(verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _emit(args, text: str, report: Dict):
    sys.stdout.write(text)
    if args.output:
        if os.path.dirname(args.output):
            write_json(args.output, report)
        else:
            ReportStorage().save(args.output, report)


def _error_report(exc: ShiftLabError) -> Dict:
    report = {"status": "error", "error": type(exc).__name__, "message": str(exc),
              "exit_code": exc.exit_code}
    if isinstance(exc, CommutativityError) and exc.point is not None:
        report["witness"] = {"k": list(exc.point), "lhs": format_rational(exc.lhs),
                             "rhs": format_rational(exc.rhs)}
    return report


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ShiftLabError as exc:
        print(f"shiftlab: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:          # --help
        return exc.code or 0

    _configure_logging(args.verbose)
    try:
        report = COMMANDS[args.command](args)
    except ShiftLabError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        error = _error_report(exc)
        if args.format == "json":
            sys.stdout.write(dumps(error))
        print(f"shiftlab {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code

    text = dumps(report) if args.format == "json" else render(args.command, report)
    _emit(args, text, report)
    return 0
