"""
shifts/classify.py — Quasinormality hierarchy for 2-variable weighted shifts

normal ⟹ matricially quasinormal ⟹ jointly quasinormal ⟹ spherically
quasinormal ⟹ subnormal. Every predicate here is an exact identity on the
squared weights; the one-variable helpers check power decompositions of
unilateral shifts at desk scale.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from core import events
from core.config import debug_verify_enabled
from core.errors import InputError, WindowError
from core.rationals import format_rational, parse_rational
from shifts.lattice import (
    Condition, LatticePoint, PredicateVerdict, TailRule, VerdictStatus, WeightDiagram, Witness,
    require_commutative, scan, violated,
)

logger = logging.getLogger(__name__)

MATRICIAL_NOTE = ("T1 would have to commute with T1*T2, making T1 normal on every row "
                  "k2 ≥ 1; there are no normal unilateral weighted shifts")
JOINT_NOTE = "y constant along ε1 and x constant along ε2; with sphericality, x and y globally constant"
SUBNORMAL_NOTE = "implied by spherical quasinormality; not tested independently"
HYPONORMAL_NOTE = "necessary condition for subnormality only"


# ═══════════════════════════════════════════════════
# SPHERICAL QUASINORMALITY
# ═══════════════════════════════════════════════════

def is_spherically_quasinormal(d: WeightDiagram) -> PredicateVerdict:
    """x_k + y_k = C everywhere, with C := x_(0,0) + y_(0,0)."""
    C = d.x((0, 0)) + d.y((0, 0))
    verdict = scan(d, events.SPHERICAL,
                   [Condition("x[k]+y[k] = C", (0, 0), lambda k: (d.x(k) + d.y(k), C))],
                   constant=C)
    if debug_verify_enabled() and d.window[0] > 1 and d.window[1] > 1:
        by_moments = is_spherically_quasinormal_by_moments(d)
        if by_moments.holds != verdict.holds:
            raise AssertionError("weight and moment criteria for sphericality disagree")
    return verdict


def is_spherically_quasinormal_by_moments(d: WeightDiagram) -> PredicateVerdict:
    """γ_{k+ε1} + γ_{k+ε2} = C·γ_k with moments taken along row-first paths."""
    require_commutative(d)
    C = d.x((0, 0)) + d.y((0, 0))
    gammas: Dict[LatticePoint, Fraction] = {}

    def gamma(k: LatticePoint) -> Fraction:
        if k in gammas:
            return gammas[k]
        if k.k2 > 0:
            below = LatticePoint(k.k1, k.k2 - 1)
            value = gamma(below) * d.y(below)
        elif k.k1 > 0:
            left = LatticePoint(k.k1 - 1, 0)
            value = gamma(left) * d.x(left)
        else:
            value = Fraction(1)
        gammas[k] = value
        return value

    def sides(k: LatticePoint):
        return gamma(k.plus(1, 0)) + gamma(k.plus(0, 1)), C * gamma(k)

    return scan(d, events.SPHERICAL_MOMENTS,
                [Condition("g[k+e1]+g[k+e2] = C*g[k]", (1, 1), sides)], constant=C)


def is_spherical_isometry(d: WeightDiagram) -> PredicateVerdict:
    """Spherically quasinormal with C = 1, i.e. T1*T1 + T2*T2 = I."""
    verdict = is_spherically_quasinormal(d)
    if not verdict.holds:
        return PredicateVerdict(events.SPHERICAL_ISOMETRY, verdict.status, verdict.witness,
                                verdict.constant, verdict.note)
    if verdict.constant != 1:
        return violated(events.SPHERICAL_ISOMETRY, (0, 0), verdict.constant, 1,
                        "x[k]+y[k] = 1", constant=verdict.constant)
    status = VerdictStatus.HOLDS_EVERYWHERE if verdict.everywhere else VerdictStatus.HOLDS_ON_WINDOW
    return PredicateVerdict(events.SPHERICAL_ISOMETRY, status, constant=verdict.constant)


# ═══════════════════════════════════════════════════
# JOINT AND MATRICIAL QUASINORMALITY
# ═══════════════════════════════════════════════════

def is_jointly_quasinormal(d: WeightDiagram) -> PredicateVerdict:
    """Holds iff the diagram is constant (the Helton–Howe shift up to scaling).

    Witness sides read (value at k, value one step on).
    """
    require_commutative(d)
    return scan(d, events.JOINT, [
        Condition("y[k] = y[k+e1]", (1, 0), lambda k: (d.y(k), d.y(k.plus(1, 0)))),
        Condition("x[k] = x[k+e2]", (0, 1), lambda k: (d.x(k), d.x(k.plus(0, 1)))),
        Condition("x[k] = x[k+e1]", (1, 0), lambda k: (d.x(k), d.x(k.plus(1, 0)))),
        Condition("y[k] = y[k+e2]", (0, 1), lambda k: (d.y(k), d.y(k.plus(0, 1)))),
    ], note=JOINT_NOTE)


def is_matricially_quasinormal(d: WeightDiagram) -> PredicateVerdict:
    """Never holds for a 2-variable weighted shift.

    Witness: the squared coefficient of e_(0,1) in T1(T1*T2)e_(0,0), which is
    0, against that of (T1*T2)T1 e_(0,0), which is x_(0,0)·y_(1,0)·x_(0,1) > 0.
    """
    rhs = d.x((0, 0))
    if d.window[0] > 1 and d.window[1] > 1:
        rhs = d.x((0, 0)) * d.y((1, 0)) * d.x((0, 1))
    return violated(events.MATRICIAL, (0, 0), 0, rhs,
                    "T1(T1*T2)e_k = (T1*T2)T1 e_k", note=MATRICIAL_NOTE)


def is_coordinatewise_hyponormal(d: WeightDiagram) -> PredicateVerdict:
    """Rows of x and columns of y nondecreasing."""
    return scan(d, events.COORDINATEWISE_HYPONORMAL, [
        Condition("x[k] <= x[k+e1]", (1, 0), lambda k: (d.x(k), d.x(k.plus(1, 0))), "<="),
        Condition("y[k] <= y[k+e2]", (0, 1), lambda k: (d.y(k), d.y(k.plus(0, 1))), "<="),
    ], note=HYPONORMAL_NOTE)


# ═══════════════════════════════════════════════════
# REPORT
# ═══════════════════════════════════════════════════

@dataclass
class ClassificationReport:
    commutative: PredicateVerdict
    matricial: PredicateVerdict
    joint: PredicateVerdict
    spherical: PredicateVerdict
    spherical_isometry: PredicateVerdict
    coordinatewise_hyponormal: PredicateVerdict
    toral_fixed: PredicateVerdict
    spherical_fixed: PredicateVerdict
    transforms_agree: PredicateVerdict
    subnormal_implied: bool = False
    notes: List[str] = field(default_factory=list)

    def verdicts(self) -> Dict[str, PredicateVerdict]:
        return {
            "commutative": self.commutative,
            "matricial": self.matricial,
            "joint": self.joint,
            "spherical": self.spherical,
            "spherical_isometry": self.spherical_isometry,
            "coordinatewise_hyponormal": self.coordinatewise_hyponormal,
            "toral_fixed": self.toral_fixed,
            "spherical_fixed": self.spherical_fixed,
            "transforms_agree": self.transforms_agree,
        }

    def to_dict(self) -> Dict:
        out = {name: v.to_dict() for name, v in self.verdicts().items()}
        out["subnormal"] = {"implied": self.subnormal_implied, "note": SUBNORMAL_NOTE}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def classify(d: WeightDiagram) -> ClassificationReport:
    """Evaluate the whole hierarchy; raises CommutativityError first if needed."""
    from shifts.aluthge import is_spherical_fixed_point, is_toral_fixed_point, transforms_agree

    commutative = require_commutative(d)
    joint = is_jointly_quasinormal(d)
    spherical = is_spherically_quasinormal(d)
    spherical_fixed = is_spherical_fixed_point(d)
    report = ClassificationReport(
        commutative=commutative,
        matricial=is_matricially_quasinormal(d),
        joint=joint,
        spherical=spherical,
        spherical_isometry=is_spherical_isometry(d),
        coordinatewise_hyponormal=is_coordinatewise_hyponormal(d),
        toral_fixed=is_toral_fixed_point(d),
        spherical_fixed=spherical_fixed,
        transforms_agree=transforms_agree(d),
        subnormal_implied=spherical.holds,
    )
    assert not joint.holds or spherical.holds, "joint quasinormality must imply sphericality"
    assert spherical_fixed.status is spherical.status, "spherical fixed points are the spherical shifts"
    if d.tail_rule is TailRule.NONE:
        report.notes.append(f"verdicts cover the window {d.window} only")
    logger.debug("classified %r: spherical=%s joint=%s", d, spherical.status.value, joint.status.value)
    return report


# ═══════════════════════════════════════════════════
# ONE-VARIABLE SHIFTS
# ═══════════════════════════════════════════════════

@dataclass(frozen=True)
class OneVarShift:
    """shift(α_0, α_1, …) through its squared weights w[i] = α_i²."""
    w: tuple
    tail_rule: TailRule = TailRule.NONE

    def __post_init__(self):
        if self.tail_rule is TailRule.GENERATOR:
            raise InputError("one-variable shifts support only none or constant-extension tails")
        weights = tuple(parse_rational(v) for v in self.w)
        if not weights:
            raise InputError("a one-variable shift needs at least one weight")
        if any(v <= 0 for v in weights):
            raise InputError("one-variable weights must be positive")
        object.__setattr__(self, "w", weights)

    def weight(self, i: int) -> Fraction:
        if i < len(self.w):
            return self.w[i]
        if self.tail_rule is TailRule.CONSTANT_EXTENSION:
            return self.w[-1]
        raise InputError(f"weight {i} lies beyond the supplied {len(self.w)} weights")

    def to_dict(self) -> Dict:
        return {"w": [format_rational(v) for v in self.w], "tail_rule": self.tail_rule.value}


def onevar_power_components(s: OneVarShift, m: int) -> List[OneVarShift]:
    """Components of T^m on the subspaces spanned by e_{m·l+p}, 0 ≤ p < m."""
    if m < 1:
        raise InputError(f"power must be at least 1, got {m}")
    n = len(s.w)
    components = []
    for p in range(m):
        if s.tail_rule is TailRule.CONSTANT_EXTENSION:
            # the last slot multiplies clamped weights only, so the tail stays constant
            size = n // m + 2
        else:
            size = (n - p - m) // m + 1
        if size < 1:
            raise WindowError(f"{n} weights are too few for component {p} of power {m}")
        weights = []
        for l in range(size):
            product = Fraction(1)
            for j in range(m):
                product *= s.weight(m * l + p + j)
            weights.append(product)
        components.append(OneVarShift(tuple(weights), s.tail_rule))
    return components


def _onevar_violated(name: str, i: int, lhs: Fraction, rhs: Fraction, condition: str) -> PredicateVerdict:
    return PredicateVerdict(name, VerdictStatus.VIOLATED, Witness(None, lhs, rhs, condition, index=i))


def onevar_is_quasinormal(s: OneVarShift) -> PredicateVerdict:
    """Quasinormal iff all weights are equal (a multiple of U_+)."""
    for i in range(1, len(s.w)):
        if s.w[i] != s.w[0]:
            return _onevar_violated(events.ONEVAR_QUASINORMAL, i, s.w[i], s.w[0], "w[i] = w[0]")
    status = (VerdictStatus.HOLDS_EVERYWHERE if s.tail_rule is TailRule.CONSTANT_EXTENSION
              else VerdictStatus.HOLDS_ON_WINDOW)
    return PredicateVerdict(events.ONEVAR_QUASINORMAL, status, constant=s.w[0])


def onevar_is_hyponormal(s: OneVarShift) -> PredicateVerdict:
    """Nondecreasing weights."""
    for i in range(len(s.w) - 1):
        if s.w[i] > s.w[i + 1]:
            return _onevar_violated(events.ONEVAR_HYPONORMAL, i, s.w[i], s.w[i + 1], "w[i] <= w[i+1]")
    status = (VerdictStatus.HOLDS_EVERYWHERE if s.tail_rule is TailRule.CONSTANT_EXTENSION
              else VerdictStatus.HOLDS_ON_WINDOW)
    return PredicateVerdict(events.ONEVAR_HYPONORMAL, status)
