"""
shifts/aluthge.py — Toral and spherical Aluthge transforms

Transforms are numeric (square roots of rationals, evaluated with mpmath at
a chosen binary precision). Every decision about fixed points or agreement
is made by an exact predicate on the squared weights; the numeric side is
diagnostics only.

    toral:      x'_k = √(x_k·x_{k+ε1}),        y'_k = √(y_k·y_{k+ε2})
    spherical:  x'_k = x_k·√(S_{k+ε1}/S_k),     y'_k = y_k·√(S_{k+ε2}/S_k),   S = x + y
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import mpmath

from core import events
from core.config import (
    DEFAULT_ITERATION_STEPS, FIXED_POINT_TOLERANCE_BITS, MIN_PRECISION,
    debug_verify_enabled, resolve_precision,
)
from core.errors import InputError, IterationExhausted, WindowError
from shifts.classify import is_spherically_quasinormal
from shifts.lattice import (
    Condition, LatticePoint, PredicateVerdict, TailRule, WeightDiagram, scan,
)

logger = logging.getLogger(__name__)

TORAL = "toral"
SPHERICAL = "spherical"


# ═══════════════════════════════════════════════════
# NUMERIC DIAGRAM
# ═══════════════════════════════════════════════════

@dataclass
class NumericDiagram:
    """Squared weights as mpmath floats on a rectangular window."""
    x: Dict[LatticePoint, mpmath.mpf]
    y: Dict[LatticePoint, mpmath.mpf]
    precision: int
    window: Tuple[int, int]

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise InputError(f"numeric diagrams need at least {MIN_PRECISION} bits")
        if any(v <= 0 for v in self.x.values()) or any(v <= 0 for v in self.y.values()):
            raise InputError("transformed weights must stay positive")

    def points(self):
        n1, n2 = self.window
        for k2 in range(n2):
            for k1 in range(n1):
                yield LatticePoint(k1, k2)

    def digits(self) -> int:
        return int(self.precision * math.log10(2)) + 1

    def to_dict(self) -> Dict:
        n1, n2 = self.window
        digits = self.digits()

        def rows(values):
            return [[mpmath.nstr(values[LatticePoint(k1, k2)], digits) for k1 in range(n1)]
                    for k2 in range(n2)]

        return {"kind": "numeric", "window": [n1, n2], "precision": self.precision,
                "x": rows(self.x), "y": rows(self.y)}


Source = Union[WeightDiagram, NumericDiagram]


def to_mpf(value: Fraction) -> mpmath.mpf:
    """Exact rational to mpf at the current working precision."""
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def from_exact(d: WeightDiagram, precision: int = None) -> NumericDiagram:
    precision = resolve_precision(precision)
    n1, n2 = d.window
    with mpmath.workprec(precision):
        x = {LatticePoint(k1, k2): to_mpf(d.x((k1, k2))) for k2 in range(n2) for k1 in range(n1)}
        y = {LatticePoint(k1, k2): to_mpf(d.y((k1, k2))) for k2 in range(n2) for k1 in range(n1)}
    return NumericDiagram(x, y, precision, (n1, n2))


def _accessors(d: Source) -> Tuple[Callable, Callable, Tuple[int, int]]:
    """Getters for the transform input plus the output window."""
    n1, n2 = d.window
    if isinstance(d, WeightDiagram):
        getx = lambda k: to_mpf(d.x(k))
        gety = lambda k: to_mpf(d.y(k))
        if d.tail_rule is not TailRule.NONE:
            return getx, gety, (n1, n2)
    else:
        getx = lambda k: d.x[k]
        gety = lambda k: d.y[k]
    if n1 < 2 or n2 < 2:
        raise WindowError(f"transforms need a window of at least 2×2, got {d.window}")
    return getx, gety, (n1 - 1, n2 - 1)


def _transform(d: Source, precision: int, rule: Callable) -> NumericDiagram:
    precision = resolve_precision(precision)
    getx, gety, window = _accessors(d)
    x, y = {}, {}
    with mpmath.workprec(precision):
        for k2 in range(window[1]):
            for k1 in range(window[0]):
                k = LatticePoint(k1, k2)
                x[k], y[k] = rule(getx, gety, k)
    return NumericDiagram(x, y, precision, window)


def _toral_rule(getx, gety, k):
    return (mpmath.sqrt(getx(k) * getx(k.plus(1, 0))),
            mpmath.sqrt(gety(k) * gety(k.plus(0, 1))))


def _spherical_rule(getx, gety, k):
    s = getx(k) + gety(k)
    s1 = getx(k.plus(1, 0)) + gety(k.plus(1, 0))
    s2 = getx(k.plus(0, 1)) + gety(k.plus(0, 1))
    return getx(k) * mpmath.sqrt(s1 / s), gety(k) * mpmath.sqrt(s2 / s)


def toral_transform(d: Source, precision: int = None) -> NumericDiagram:
    """Coordinatewise Aluthge transform."""
    return _transform(d, precision, _toral_rule)


def spherical_transform(d: Source, precision: int = None) -> NumericDiagram:
    """Aluthge transform through the joint polar decomposition P = √(T1*T1 + T2*T2)."""
    return _transform(d, precision, _spherical_rule)


# ═══════════════════════════════════════════════════
# DIAGNOSTICS
# ═══════════════════════════════════════════════════

def _as_numeric(d: Source, precision: int) -> NumericDiagram:
    return from_exact(d, precision) if isinstance(d, WeightDiagram) else d


def max_relative_deviation(a: Source, b: Source, precision: int = None) -> mpmath.mpf:
    """max |a_k − b_k| / |b_k| over the common window, x and y together."""
    precision = resolve_precision(precision)
    na, nb = _as_numeric(a, precision), _as_numeric(b, precision)
    window = (min(na.window[0], nb.window[0]), min(na.window[1], nb.window[1]))
    worst = mpmath.mpf(0)
    with mpmath.workprec(precision):
        for k2 in range(window[1]):
            for k1 in range(window[0]):
                k = LatticePoint(k1, k2)
                for va, vb in ((na.x[k], nb.x[k]), (na.y[k], nb.y[k])):
                    worst = max(worst, abs(va - vb) / abs(vb))
    return worst


def sup_delta(a: NumericDiagram, b: NumericDiagram) -> mpmath.mpf:
    """Sup-norm distance on the common window."""
    window = (min(a.window[0], b.window[0]), min(a.window[1], b.window[1]))
    worst = mpmath.mpf(0)
    with mpmath.workprec(max(a.precision, b.precision)):
        for k2 in range(window[1]):
            for k1 in range(window[0]):
                k = LatticePoint(k1, k2)
                worst = max(worst, abs(a.x[k] - b.x[k]), abs(a.y[k] - b.y[k]))
    return worst


@dataclass
class NumericCheck:
    holds: bool
    max_defect: mpmath.mpf
    point: Optional[LatticePoint] = None


def numeric_commutativity(nd: NumericDiagram, tolerance_bits: int = None) -> NumericCheck:
    """y_{k+ε1}x_k ≈ x_{k+ε2}y_k within relative 2^-tolerance_bits."""
    tolerance_bits = tolerance_bits or nd.precision // 2
    n1, n2 = nd.window
    worst, where = mpmath.mpf(0), None
    with mpmath.workprec(nd.precision):
        tol = mpmath.ldexp(1, -tolerance_bits)
        for k2 in range(n2 - 1):
            for k1 in range(n1 - 1):
                k = LatticePoint(k1, k2)
                lhs = nd.y[k.plus(1, 0)] * nd.x[k]
                rhs = nd.x[k.plus(0, 1)] * nd.y[k]
                defect = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
                if defect > worst:
                    worst, where = defect, k
    return NumericCheck(worst <= tol, worst, where if worst > tol else None)


def toral_transform_commutes_numerically(d: WeightDiagram, precision: int = None,
                                         tolerance_bits: int = None) -> NumericCheck:
    """Numeric twin of toral_transform_commutes, on the same lattice points."""
    precision = resolve_precision(precision)
    source = d
    if d.tail_rule is not TailRule.NONE:
        source = d.with_window((d.window[0] + 1, d.window[1] + 1))
    return numeric_commutativity(toral_transform(source, precision), tolerance_bits)


# ═══════════════════════════════════════════════════
# EXACT PREDICATES
# ═══════════════════════════════════════════════════

def toral_transform_commutes(d: WeightDiagram) -> PredicateVerdict:
    """x_{k+ε2}·x_{k+ε1+ε2} = x_{k+ε1}·x_{k+2ε2}.

    Checked wherever the transformed pair's commutativity at k is defined
    (k + 2ε1 + 2ε2 evaluable).
    """
    def sides(k):
        return (d.x(k.plus(0, 1)) * d.x(k.plus(1, 1)),
                d.x(k.plus(1, 0)) * d.x(k.plus(0, 2)))

    return scan(d, events.TORAL_COMMUTES,
                [Condition("x[k+e2]*x[k+e1+e2] = x[k+e1]*x[k+2e2]", (2, 2), sides)])


def is_toral_fixed_point(d: WeightDiagram) -> PredicateVerdict:
    """√(x_k x_{k+ε1}) = x_k and √(y_k y_{k+ε2}) = y_k reduce to constant rows / columns."""
    return scan(d, events.TORAL_FIXED, [
        Condition("x[k+e1] = x[k]", (1, 0), lambda k: (d.x(k.plus(1, 0)), d.x(k))),
        Condition("y[k+e2] = y[k]", (0, 1), lambda k: (d.y(k.plus(0, 1)), d.y(k))),
    ])


def is_spherical_fixed_point(d: WeightDiagram, precision: int = None) -> PredicateVerdict:
    """Spherical Aluthge fixed points are exactly the spherically quasinormal shifts."""
    spherical = is_spherically_quasinormal(d)
    verdict = PredicateVerdict(events.SPHERICAL_FIXED, spherical.status, spherical.witness,
                               spherical.constant, spherical.note)
    if debug_verify_enabled() and spherical.holds:
        precision = resolve_precision(precision)
        deviation = max_relative_deviation(spherical_transform(d, precision), d, precision)
        with mpmath.workprec(precision):
            if deviation >= mpmath.ldexp(1, -min(FIXED_POINT_TOLERANCE_BITS, precision // 2)):
                raise AssertionError(f"spherical shift moved under the transform by {deviation}")
    return verdict


def transforms_agree(d: WeightDiagram) -> PredicateVerdict:
    """Toral and spherical transforms coincide: x_{k+ε1} = x_{k+ε2}, y_{k+ε2} = y_{k+ε1}."""
    return scan(d, events.TRANSFORMS_AGREE, [
        Condition("x[k+e1] = x[k+e2]", (1, 1), lambda k: (d.x(k.plus(1, 0)), d.x(k.plus(0, 1)))),
        Condition("y[k+e2] = y[k+e1]", (1, 1), lambda k: (d.y(k.plus(0, 1)), d.y(k.plus(1, 0)))),
    ])


# ═══════════════════════════════════════════════════
# ITERATION
# ═══════════════════════════════════════════════════

@dataclass
class IterationResult:
    which: str
    precision: int
    diagrams: List[NumericDiagram] = field(default_factory=list)
    deltas: List[mpmath.mpf] = field(default_factory=list)

    def to_dict(self) -> Dict:
        digits = max(15, int(self.precision * math.log10(2)) + 1)
        return {"which": self.which, "precision": self.precision,
                "steps": len(self.diagrams),
                "deltas": [mpmath.nstr(v, digits) for v in self.deltas],
                "final": self.diagrams[-1].to_dict() if self.diagrams else None}


def iterate(d: Source, which: str = SPHERICAL, steps: int = DEFAULT_ITERATION_STEPS,
            precision: int = None) -> IterationResult:
    """Apply a transform `steps` times, recording sup-norm deltas between steps."""
    if which not in (TORAL, SPHERICAL):
        raise InputError(f"unknown transform {which!r}; use 'toral' or 'spherical'")
    if steps < 1:
        raise InputError("steps must be at least 1")
    precision = resolve_precision(precision)
    transform = toral_transform if which == TORAL else spherical_transform

    current: Source = d
    if isinstance(d, WeightDiagram) and d.tail_rule is not TailRule.NONE:
        # grow the exact window so that the last step still covers d.window
        current = d.with_window((d.window[0] + steps - 1, d.window[1] + steps - 1))
    previous = _as_numeric(current, precision)
    result = IterationResult(which, precision)
    for step in range(steps):
        try:
            nxt = transform(current, precision)
        except WindowError as exc:
            raise IterationExhausted(
                f"window exhausted after {step} of {steps} {which} steps: {exc}", partial=result)
        result.diagrams.append(nxt)
        result.deltas.append(sup_delta(nxt, previous))
        logger.debug("%s step %d: window %s delta %s", which, step + 1, nxt.window,
                     mpmath.nstr(result.deltas[-1], 10))
        previous = current = nxt
    return result
