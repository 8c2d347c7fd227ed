"""
shifts/powers.py — Powers W^(m,n) = (T1^m, T2^n) of a 2-variable weighted shift

Each subspace H^(m,n)_(p,q) spanned by e_(m·l+p, n·k+q) reduces T1^m and T2^n,
and the restriction is again a 2-variable weighted shift. Its squared
weights are consecutive products along the sublattice:

    x'_(l,k) = Π_{j<m} x_(m·l+p+j, n·k+q)
    y'_(l,k) = Π_{j<n} y_(m·l+p, n·k+q+j)
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from core import events
from core.config import power_exponent_cap
from core.errors import InputError, WindowError
from core.rationals import format_rational
from shifts.classify import is_spherically_quasinormal
from shifts.lattice import (
    PredicateVerdict, TailRule, VerdictStatus, WeightDiagram, check_commutative,
    require_commutative,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerSpec:
    m: int
    n: int
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InputError(f"powers must be positive, got (m, n) = ({self.m}, {self.n})")
        cap = power_exponent_cap()
        if self.m > cap or self.n > cap:
            raise InputError(f"powers above {cap} are disabled "
                             f"(raise SHIFTLAB_POWER_CAP to allow them)")
        if not 0 <= self.p < self.m or not 0 <= self.q < self.n:
            raise InputError(f"(p, q) = ({self.p}, {self.q}) must satisfy 0 ≤ p < m, 0 ≤ q < n")


def power_subspace_diagram(d: WeightDiagram, spec: PowerSpec) -> WeightDiagram:
    """W^(m,n) restricted to H^(m,n)_(p,q)."""
    require_commutative(d)
    m, n, p, q = spec.m, spec.n, spec.p, spec.q

    if d.tail_rule is TailRule.NONE:
        window = ((d.window[0] - p - m) // m + 1, (d.window[1] - q - n) // n + 1)
        if window[0] < 1 or window[1] < 1:
            raise WindowError(f"window {d.window} holds no point of H^({m},{n})_({p},{q})")
        tail = TailRule.NONE
    elif d.tail_rule is TailRule.CONSTANT_EXTENSION:
        # every index m·l+p+j past the window clamps to the same edge value
        window, tail = d.window, TailRule.CONSTANT_EXTENSION
    else:
        window, tail = d.window, TailRule.GENERATOR

    def x_fn(l, k):
        product = Fraction(1)
        for j in range(m):
            product *= d.x((m * l + p + j, n * k + q))
        return product

    def y_fn(l, k):
        product = Fraction(1)
        for j in range(n):
            product *= d.y((m * l + p, n * k + q + j))
        return product

    certified = frozenset({events.COMMUTATIVE}) if d.certifies(events.COMMUTATIVE) else frozenset()
    restriction = WeightDiagram(window, x_fn, y_fn, tail, kind="power",
                                params={"m": m, "n": n, "p": p, "q": q, "source": d.kind},
                                certified=certified)
    if window[0] > 1 and window[1] > 1 and not check_commutative(restriction).holds:
        raise AssertionError("restriction of a commuting shift must commute")
    return restriction


@dataclass
class PowerReport:
    m: int
    n: int
    restrictions: Dict[Tuple[int, int], PredicateVerdict] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.restrictions.values())

    @property
    def status(self) -> VerdictStatus:
        if not self.holds:
            return VerdictStatus.VIOLATED
        if all(v.everywhere for v in self.restrictions.values()):
            return VerdictStatus.HOLDS_EVERYWHERE
        return VerdictStatus.HOLDS_ON_WINDOW

    @property
    def first_violation(self) -> Optional[Tuple[int, int]]:
        return next((pq for pq, v in self.restrictions.items() if not v.holds), None)

    @property
    def constants_coincide(self) -> Optional[bool]:
        """Only meaningful when every restriction is spherical."""
        if not self.holds:
            return None
        return len({v.constant for v in self.restrictions.values()}) == 1

    def to_dict(self) -> Dict:
        return {
            "m": self.m, "n": self.n,
            "status": self.status.value,
            "constants_coincide": self.constants_coincide,
            "restrictions": [dict({"p": p, "q": q}, **v.to_dict())
                             for (p, q), v in self.restrictions.items()],
        }


def power_spherical_report(d: WeightDiagram, m: int, n: int) -> PowerReport:
    """Sphericality of every restriction W^(m,n)|H^(m,n)_(p,q)."""
    require_commutative(d)
    report = PowerReport(m, n)
    for q in range(n):
        for p in range(m):
            restriction = power_subspace_diagram(d, PowerSpec(m, n, p, q))
            report.restrictions[(p, q)] = is_spherically_quasinormal(restriction)
    if report.holds and not report.constants_coincide:
        logger.info("W^(%d,%d): every restriction is spherical but the constants differ: %s",
                    m, n, sorted({format_rational(v.constant) for v in report.restrictions.values()}))
    return report
