"""
File Formats — JSON codecs for diagrams, measures and moment sequences
Every rational travels as a "p/q" string; tables are row-major with row index k2.

    diagram   {"kind", "window": [N1, N2], "x": [[...]], "y": [[...]], "params": {...}}
    measure   {"atoms": [{"s", "t", "rho"}, ...]}
    sequence  {"n": n, "gamma": {"i,j": "p/q", ...}}
"""
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from core.errors import InputError
from core.rationals import format_rational, parse_rational
from shifts.berger import AtomicMeasure, shift_from_measure
from shifts.lattice import (
    TailRule, WeightDiagram, generate_constant, generate_flat_above_row_zero, generate_TS,
)
from shifts.moments import BiMomentSequence

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def jsonable(value: Any) -> Any:
    """Fractions become "p/q"; measures, verdicts and reports their dicts."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def dumps(data: Any) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(jsonable(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_json(path: PathLike) -> Dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def write_json(path: PathLike, data: Any):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(data))


# ── Diagrams ──────────────────────────────────────────────────

def diagram_to_dict(d: WeightDiagram) -> Dict:
    params = dict(d.params)
    if d.kind == "explicit":
        params["tail_rule"] = d.tail_rule.value
    return {
        "kind": d.kind,
        "window": list(d.window),
        "x": [[format_rational(v) for v in row] for row in d.table("x")],
        "y": [[format_rational(v) for v in row] for row in d.table("y")],
        "params": jsonable(params),
    }


def diagram_from_dict(data: Dict) -> WeightDiagram:
    try:
        kind = data.get("kind", "explicit")
        window = tuple(int(v) for v in data["window"])
        params = data.get("params") or {}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed diagram: {exc}")
    if len(window) != 2:
        raise InputError("window must be [N1, N2]")

    try:
        if kind == "constant":
            d = generate_constant(params["r1_sq"], params["r2_sq"], window)
        elif kind == "flat_above_row_zero":
            d = generate_flat_above_row_zero(params["a"], params["y00"], params["C"], window)
        elif kind == "ts":
            d = generate_TS(params["row0_x"], params["y00"], window,
                            extend_constant=bool(params.get("extend_constant", False)))
        elif kind == "from_measure":
            d = shift_from_measure(measure_from_dict(params["measure"]), window)
        else:
            d = None
    except KeyError as exc:
        raise InputError(f"{kind} diagram is missing parameter {exc}")

    if d is None:
        # explicit tables, including serialized power restrictions
        try:
            tail = TailRule(params.get("tail_rule", TailRule.NONE.value))
        except ValueError:
            raise InputError(f"unknown tail rule {params.get('tail_rule')!r}")
        d = WeightDiagram.from_tables(data.get("x"), data.get("y"), tail)
        if d.window != window:
            raise InputError(f"tables are {d.window} but the file says {window}")
        return d

    # generator-backed kinds may also carry tables; they must agree
    for which in ("x", "y"):
        if which in data and data[which]:
            expected = d.table(which)
            given = [[parse_rational(v) for v in row] for row in data[which]]
            if given != expected:
                raise InputError(f"{which} table disagrees with the {kind} generator")
    return d


def load_diagram(path: PathLike) -> WeightDiagram:
    d = diagram_from_dict(read_json(path))
    logger.debug("loaded %r from %s", d, path)
    return d


def dump_diagram(d: WeightDiagram, path: PathLike):
    write_json(path, diagram_to_dict(d))


# ── Measures ──────────────────────────────────────────────────

def measure_from_dict(data: Dict) -> AtomicMeasure:
    try:
        triples = [(a["s"], a["t"], a["rho"]) for a in data["atoms"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed measure: {exc}")
    return AtomicMeasure.of(*triples)


def load_measure(path: PathLike) -> AtomicMeasure:
    return measure_from_dict(read_json(path))


def dump_measure(mu: AtomicMeasure, path: PathLike):
    write_json(path, mu.to_dict())


# ── Moment sequences ──────────────────────────────────────────

def sequence_from_dict(data: Dict) -> BiMomentSequence:
    try:
        n = int(data["n"])
        gamma = {}
        for key, value in data["gamma"].items():
            i, j = (int(part) for part in key.split(","))
            gamma[(i, j)] = parse_rational(value)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed moment sequence: {exc}")
    return BiMomentSequence(n, gamma)


def load_sequence(path: PathLike) -> BiMomentSequence:
    return sequence_from_dict(read_json(path))


def dump_sequence(g: BiMomentSequence, path: PathLike):
    write_json(path, g.to_dict())
