"""
shifts/berger.py — Finitely atomic Berger measures

A subnormal 2-variable weighted shift is determined by its Berger measure μ:
γ_k = ∫ s^k1 t^k2 dμ(s,t). Going the other way, x_k = γ_{k+ε1}/γ_k and
y_k = γ_{k+ε2}/γ_k turn any atomic probability measure with positive
moments into a commuting weight diagram.

For two atoms (s,t), (u,v) with s < u and t ≠ v, sphericality of (T1,T2),
(T1²,T2) and (T1,T2²) reduces to s+t = u+v, s²+t = u²+v and s+t² = u+v²
respectively; the densities never enter.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from core import events
from core.config import DEFAULT_WINDOW
from core.errors import InputError
from core.rationals import format_rational, parse_rational
from shifts.lattice import TailRule, WeightDiagram, as_point, lattice_moments_table

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


# ═══════════════════════════════════════════════════
# MEASURES
# ═══════════════════════════════════════════════════

@dataclass(frozen=True)
class Atom:
    s: Fraction
    t: Fraction
    rho: Fraction

    def to_dict(self) -> Dict:
        return {"s": format_rational(self.s), "t": format_rational(self.t),
                "rho": format_rational(self.rho)}


@dataclass(frozen=True)
class AtomicMeasure:
    """Σ ρ_i δ_(s_i, t_i) on R₊²; a probability measure unless probability=False."""
    atoms: Tuple[Atom, ...]
    probability: bool = True

    def __post_init__(self):
        atoms = tuple(Atom(parse_rational(a.s), parse_rational(a.t), parse_rational(a.rho))
                      for a in self.atoms)
        if not atoms:
            raise InputError("a measure needs at least one atom")
        for a in atoms:
            if a.s < 0 or a.t < 0:
                raise InputError(f"atom ({format_rational(a.s)}, {format_rational(a.t)}) lies outside R₊²")
            if a.rho <= 0:
                raise InputError("atom densities must be positive")
        if len({(a.s, a.t) for a in atoms}) != len(atoms):
            raise InputError("atoms must be pairwise distinct")
        if self.probability and sum(a.rho for a in atoms) != 1:
            raise InputError("densities must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def of(cls, *triples, probability: bool = True) -> "AtomicMeasure":
        """AtomicMeasure.of((s, t, rho), ...) with rationals or "p/q" strings."""
        return cls(tuple(Atom(*(parse_rational(v) for v in triple)) for triple in triples),
                   probability=probability)

    @property
    def support(self) -> List[Tuple[Fraction, Fraction]]:
        return sorted((a.s, a.t) for a in self.atoms)

    def as_sorted(self) -> List[Atom]:
        return sorted(self.atoms, key=lambda a: (a.s, a.t))

    def with_densities(self, densities: Sequence) -> "AtomicMeasure":
        atoms = self.as_sorted()
        if len(densities) != len(atoms):
            raise InputError("one density per atom required")
        return AtomicMeasure(tuple(Atom(a.s, a.t, parse_rational(r)) for a, r in zip(atoms, densities)))

    def to_dict(self) -> Dict:
        return {"atoms": [a.to_dict() for a in self.as_sorted()]}


def measure_moment(mu: AtomicMeasure, k) -> Fraction:
    """∫ s^k1 t^k2 dμ, with 0^0 = 1."""
    k = as_point(k)
    return sum((a.rho * a.s ** k.k1 * a.t ** k.k2 for a in mu.atoms), Fraction(0))


def shift_from_measure(mu: AtomicMeasure, window: Tuple[int, int] = DEFAULT_WINDOW) -> WeightDiagram:
    """The weighted shift whose Berger measure is μ (moment ratios)."""
    if not mu.probability:
        raise InputError("Berger measures are probability measures")
    n1, n2 = window
    # positivity of γ is monotone in k, so the corner of window + 1 decides it
    for k in ((n1, 0), (0, n2), (n1, n2)):
        if measure_moment(mu, k) == 0:
            raise InputError(f"moment γ_{k} vanishes: the measure would force a zero weight")

    def ratio(k1, k2, d1, d2):
        below = measure_moment(mu, (k1, k2))
        if below == 0:
            raise InputError(f"moment γ_({k1},{k2}) vanishes")
        return measure_moment(mu, (k1 + d1, k2 + d2)) / below

    return WeightDiagram(window, lambda k1, k2: ratio(k1, k2, 1, 0),
                         lambda k1, k2: ratio(k1, k2, 0, 1), TailRule.GENERATOR,
                         kind="from_measure", params={"measure": mu},
                         certified=frozenset({events.COMMUTATIVE}))


# ═══════════════════════════════════════════════════
# TWO-ATOM CONDITIONS
# ═══════════════════════════════════════════════════

@dataclass(frozen=True)
class TwoAtomConditions:
    base: bool        # (T1, T2):   s + t  = u + v
    pow21: bool       # (T1², T2):  s² + t = u² + v
    pow12: bool       # (T1, T2²):  s + t² = u + v²
    sides: Dict[str, Tuple[Fraction, Fraction]]

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return self.base, self.pow21, self.pow12

    def to_dict(self) -> Dict:
        return {
            "base": self.base, "pow21": self.pow21, "pow12": self.pow12,
            "sides": {name: [format_rational(l), format_rational(r)]
                      for name, (l, r) in self.sides.items()},
        }


def two_atom_conditions(mu: AtomicMeasure) -> TwoAtomConditions:
    """Sphericality of (T1,T2), (T1²,T2), (T1,T2²) for μ = σδ_(s,t) + τδ_(u,v)."""
    if len(mu.atoms) != 2:
        raise InputError(f"exactly two atoms required, got {len(mu.atoms)}")
    first, second = mu.as_sorted()
    s, t, u, v = first.s, first.t, second.s, second.t
    if not s < u:
        raise InputError("the atoms must have distinct first coordinates (s < u)")
    if t == v:
        raise InputError("the atoms must have distinct second coordinates (t ≠ v)")
    sides = {
        "base": (s + t, u + v),
        "pow21": (s * s + t, u * u + v),
        "pow12": (s + t * t, u + v * v),
    }
    return TwoAtomConditions(
        base=sides["base"][0] == sides["base"][1],
        pow21=sides["pow21"][0] == sides["pow21"][1],
        pow12=sides["pow12"][0] == sides["pow12"][1],
        sides=sides,
    )


# ═══════════════════════════════════════════════════
# CONSTRUCTIONS
# ═══════════════════════════════════════════════════

def build_counterexample(s, u) -> AtomicMeasure:
    """Two atoms whose (T1²,T2) and (T1,T2²) are spherical while (T1,T2) is not.

    t = (1 − s³ − s²u + su² + u³) / (2(s+u)),  v = s² + t − u², densities 1/2.
    """
    s, u = parse_rational(s), parse_rational(u)
    if not 0 <= s < u:
        raise InputError("need 0 ≤ s < u")
    if s + u == 1:
        raise InputError("s + u = 1 makes (T1,T2) spherical as well; choose s + u ≠ 1")
    t = (1 - s ** 3 - s * s * u + s * u * u + u ** 3) / (2 * (s + u))
    v = s * s + t - u * u
    if t < 0 or v < 0:
        raise InputError(f"construction leaves R₊²: t = {format_rational(t)}, v = {format_rational(v)}")
    if t == v:
        raise InputError("construction collapsed to t = v")
    mu = AtomicMeasure.of((s, t, HALF), (u, v, HALF))
    logger.debug("counterexample for s=%s u=%s: t=%s v=%s", s, u, t, v)
    return mu


def remark_measure(s, sigma=HALF) -> AtomicMeasure:
    """(s, 1−s) and (1−s, s): spherical together with both squares, s ∈ [0, 1/2)."""
    s, sigma = parse_rational(s), parse_rational(sigma)
    if not 0 <= s < HALF:
        raise InputError("s must lie in [0, 1/2)")
    if not 0 < sigma < 1:
        raise InputError("sigma must lie in (0, 1)")
    return AtomicMeasure.of((s, 1 - s, sigma), (1 - s, s, 1 - sigma))


def theorem4_measure(x0, q, allow_helton_howe: bool = False) -> AtomicMeasure:
    """(1 − x0)δ_(0,1+q) + x0·δ_(1,q); x0 = 1 is the Helton–Howe point mass δ_(1,q)."""
    x0, q = parse_rational(x0), parse_rational(q)
    if q <= 0:
        raise InputError("q must be positive")
    if x0 == 1 and allow_helton_howe:
        return AtomicMeasure.of((1, q, 1))
    if not 0 < x0 < 1:
        raise InputError("x0 must lie in (0, 1); x0 = 1 needs allow_helton_howe")
    return AtomicMeasure.of((0, 1 + q, 1 - x0), (1, q, x0))


def corollary41_deficit(x0, q, allow_helton_howe: bool = False) -> Fraction:
    """(γ_(0,2) + x0) − (q² + 1); equals 2q(1 − x0), nonzero iff (T1,T2²) is not spherical."""
    x0, q = parse_rational(x0), parse_rational(q)
    mu = theorem4_measure(x0, q, allow_helton_howe)
    pb = measure_moment(mu, (0, 2))
    return pb + x0 - (q * q + 1)


@dataclass
class Theorem4Prediction:
    helton_howe: bool
    measure: Optional[AtomicMeasure]
    matches_moments: bool

    def to_dict(self) -> Dict:
        return {"helton_howe": self.helton_howe,
                "measure": self.measure.to_dict() if self.measure else None,
                "matches_moments": self.matches_moments}


def theorem4_prediction(d: WeightDiagram) -> Theorem4Prediction:
    """Predicted Berger measure of a shift with (T1,T2), (T1²,T2) spherical and x_(3,0) = 1."""
    from shifts.classify import is_spherically_quasinormal
    from shifts.powers import power_spherical_report

    if d.window[0] < 4:
        raise InputError("the prediction reads x_(3,0); use a window at least 4 wide")
    if d.x((3, 0)) != 1:
        raise InputError("only the normalized family x_(3,0) = 1 is supported")
    if not is_spherically_quasinormal(d).holds or not power_spherical_report(d, 2, 1).holds:
        raise InputError("(T1,T2) and (T1²,T2) must both be spherically quasinormal")
    x0, q = d.x((0, 0)), d.y((1, 0))
    mu = theorem4_measure(x0, q, allow_helton_howe=True)
    table = lattice_moments_table(d)
    matches = all(measure_moment(mu, k) == g for k, g in table.items())
    return Theorem4Prediction(helton_howe=(x0 == 1), measure=mu, matches_moments=matches)
