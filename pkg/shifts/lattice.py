"""
shifts/lattice.py — Exact 2-variable weighted shifts

A shift W_(α,β) is stored through its squared weights x_k = α_k², y_k = β_k²
(Fractions) on a finite window of Z₊². Values outside the window come from
the diagram's tail rule: none (access is an error), constant extension
(indices clamped to the window) or a generator (closed-form / recurrence,
evaluated lazily and memoized).

Predicates scan the window and return a PredicateVerdict; a verdict is
upgraded to holds-everywhere only when the tail rule certifies the property.
"""
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from core import events
from core.config import DEFAULT_WINDOW, MIN_WINDOW, debug_verify_enabled
from core.errors import CommutativityError, InputError, WindowError
from core.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════
# ENUMS
# ═══════════════════════════════════════════════════

class TailRule(Enum):
    NONE = "none"
    CONSTANT_EXTENSION = "constant-extension"
    GENERATOR = "generator-backed"


class VerdictStatus(Enum):
    HOLDS_ON_WINDOW = "holds-on-window"
    HOLDS_EVERYWHERE = "holds-everywhere"
    VIOLATED = "violated"


# ═══════════════════════════════════════════════════
# VALUE TYPES
# ═══════════════════════════════════════════════════

class LatticePoint(NamedTuple):
    k1: int
    k2: int

    def plus(self, d1: int = 0, d2: int = 0) -> "LatticePoint":
        return LatticePoint(self.k1 + d1, self.k2 + d2)


E1 = (1, 0)
E2 = (0, 1)


def as_point(k) -> LatticePoint:
    if isinstance(k, LatticePoint):
        return k
    try:
        k1, k2 = k
    except (TypeError, ValueError):
        raise InputError(f"lattice point must be a pair, got {k!r}")
    if int(k1) != k1 or int(k2) != k2 or k1 < 0 or k2 < 0:
        raise InputError(f"lattice point must have nonnegative integer coordinates, got {k!r}")
    return LatticePoint(int(k1), int(k2))


@dataclass(frozen=True)
class Witness:
    """Where a condition fails: a lattice point, or a plain index for one-variable shifts."""
    point: Optional[LatticePoint]
    lhs: Fraction
    rhs: Fraction
    condition: str = ""
    index: Optional[int] = None

    def to_dict(self) -> Dict:
        where = {"i": self.index} if self.point is None else {"k": [self.point.k1, self.point.k2]}
        return dict(where, lhs=format_rational(self.lhs), rhs=format_rational(self.rhs),
                    condition=self.condition)


@dataclass(frozen=True)
class PredicateVerdict:
    name: str
    status: VerdictStatus
    witness: Optional[Witness] = None
    constant: Optional[Fraction] = None
    note: str = ""

    def __post_init__(self):
        if (self.witness is not None) != (self.status is VerdictStatus.VIOLATED):
            raise ValueError("witness present iff the verdict is violated")

    @property
    def holds(self) -> bool:
        return self.status is not VerdictStatus.VIOLATED

    @property
    def everywhere(self) -> bool:
        return self.status is VerdictStatus.HOLDS_EVERYWHERE

    def to_dict(self) -> Dict:
        out = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.constant is not None:
            out["constant"] = format_rational(self.constant)
        if self.note:
            out["note"] = self.note
        return out


def violated(name: str, point, lhs, rhs, condition: str = "", note: str = "",
             constant: Fraction = None) -> PredicateVerdict:
    return PredicateVerdict(name, VerdictStatus.VIOLATED,
                            Witness(as_point(point), Fraction(lhs), Fraction(rhs), condition),
                            constant=constant, note=note)


# ═══════════════════════════════════════════════════
# WEIGHT DIAGRAM
# ═══════════════════════════════════════════════════

WeightFn = Callable[[int, int], Fraction]


class WeightDiagram:
    """Squared weights x = α², y = β² over a window with a tail rule.

    Immutable after construction. Generator-backed values are memoized in a
    lock-guarded cache, so sharing a diagram across threads is safe.
    """

    def __init__(self, window: Tuple[int, int], x_fn: WeightFn, y_fn: WeightFn,
                 tail_rule: TailRule, kind: str = "explicit", params: Dict = None,
                 certified: FrozenSet[str] = frozenset(), memoize: bool = True):
        n1, n2 = window
        if n1 < 1 or n2 < 1:
            raise WindowError(f"window must be at least 1×1, got {window}")
        self.window = (int(n1), int(n2))
        self.tail_rule = tail_rule
        self.kind = kind
        self.params = dict(params or {})
        self.certified = frozenset(certified)
        self._x_fn = x_fn
        self._y_fn = y_fn
        self._memoize = memoize
        self._cache: Dict[Tuple[str, int, int], Fraction] = {}
        self._lock = threading.Lock()
        self._validate_window()

    # ─────────── Construction helpers ───────────

    @classmethod
    def from_tables(cls, x_rows: Sequence[Sequence], y_rows: Sequence[Sequence],
                    tail_rule: TailRule = TailRule.NONE) -> "WeightDiagram":
        """Explicit diagram from row-major tables (row index = k2)."""
        if tail_rule is TailRule.GENERATOR:
            raise InputError("explicit tables cannot carry a generator tail")
        x_table = _parse_table(x_rows, "x")
        y_table = _parse_table(y_rows, "y")
        if len(x_table) != len(y_table) or len(x_table[0]) != len(y_table[0]):
            raise InputError("x and y tables must have the same shape")
        n2, n1 = len(x_table), len(x_table[0])

        def lookup(table):
            def fn(k1, k2):
                return table[min(k2, n2 - 1)][min(k1, n1 - 1)]
            return fn

        return cls((n1, n2), lookup(x_table), lookup(y_table), tail_rule,
                   kind="explicit", memoize=False)

    def _validate_window(self):
        n1, n2 = self.window
        for k2 in range(n2):
            for k1 in range(n1):
                self.x((k1, k2))
                self.y((k1, k2))

    # ─────────── Access ───────────

    def in_window(self, k) -> bool:
        k = as_point(k)
        return k.k1 < self.window[0] and k.k2 < self.window[1]

    def _value(self, which: str, k) -> Fraction:
        k = as_point(k)
        if self.tail_rule is TailRule.NONE and not self.in_window(k):
            raise InputError(f"{which}_{tuple(k)} lies outside window {self.window} "
                             f"and the diagram has no tail rule")
        fn = self._x_fn if which == "x" else self._y_fn
        if not self._memoize:
            value = fn(k.k1, k.k2)
        else:
            key = (which, k.k1, k.k2)
            with self._lock:
                value = self._cache.get(key)
            if value is None:
                value = Fraction(fn(k.k1, k.k2))
                with self._lock:
                    self._cache.setdefault(key, value)
        if value <= 0:
            raise InputError(f"{which}_{tuple(k)} = {format_rational(value)} is not positive")
        return value

    def x(self, k) -> Fraction:
        return self._value("x", k)

    def y(self, k) -> Fraction:
        return self._value("y", k)

    def certifies(self, name: str) -> bool:
        """Does a holding window verdict for `name` extend to all of Z₊²?"""
        if self.tail_rule is TailRule.CONSTANT_EXTENSION:
            return True
        return self.tail_rule is TailRule.GENERATOR and name in self.certified

    def table(self, which: str) -> List[List[Fraction]]:
        n1, n2 = self.window
        get = self.x if which == "x" else self.y
        return [[get((k1, k2)) for k1 in range(n1)] for k2 in range(n2)]

    def with_window(self, window: Tuple[int, int]) -> "WeightDiagram":
        """Same weights seen through another window (tail-ruled diagrams only)."""
        if self.tail_rule is TailRule.NONE and (window[0] > self.window[0] or window[1] > self.window[1]):
            raise WindowError(f"cannot enlarge window {self.window} without a tail rule")
        return WeightDiagram(window, self._x_fn, self._y_fn, self.tail_rule, self.kind,
                             self.params, self.certified, self._memoize)

    def __repr__(self):
        return (f"WeightDiagram(kind={self.kind!r}, window={self.window}, "
                f"tail_rule={self.tail_rule.value})")


def _parse_table(rows: Sequence[Sequence], name: str) -> List[List[Fraction]]:
    if not rows or not rows[0]:
        raise InputError(f"{name} table is empty")
    width = len(rows[0])
    table = []
    for row in rows:
        if len(row) != width:
            raise InputError(f"{name} table is ragged")
        table.append([parse_rational(v) for v in row])
    return table


def weight_x(d: WeightDiagram, k) -> Fraction:
    return d.x(k)


def weight_y(d: WeightDiagram, k) -> Fraction:
    return d.y(k)


# ═══════════════════════════════════════════════════
# WINDOW SCANS
# ═══════════════════════════════════════════════════

class Condition(NamedTuple):
    """One pointwise identity: sides(k) -> (lhs, rhs), needing k + reach."""
    label: str
    reach: Tuple[int, int]
    sides: Callable[[LatticePoint], Tuple[Fraction, Fraction]]
    relation: str = "="          # "=" or "<=" (lhs <= rhs)

    def satisfied(self, lhs: Fraction, rhs: Fraction) -> bool:
        return lhs == rhs if self.relation == "=" else lhs <= rhs


def window_points(d: WeightDiagram, reach: Tuple[int, int] = (0, 0)) -> Iterator[LatticePoint]:
    """Window points k whose offsets up to `reach` can be evaluated, row by row."""
    n1, n2 = d.window
    if d.tail_rule is TailRule.NONE:
        n1 -= reach[0]
        n2 -= reach[1]
    for k2 in range(max(n2, 0)):
        for k1 in range(max(n1, 0)):
            yield LatticePoint(k1, k2)


def _applicable(d: WeightDiagram, k: LatticePoint, reach: Tuple[int, int]) -> bool:
    if d.tail_rule is not TailRule.NONE:
        return True
    return k.k1 + reach[0] < d.window[0] and k.k2 + reach[1] < d.window[1]


def scan(d: WeightDiagram, name: str, conditions: Sequence[Condition],
         constant: Fraction = None, note: str = "") -> PredicateVerdict:
    """Exact scan of the window; the first failing point becomes the witness."""
    for k in window_points(d):
        for cond in conditions:
            if not _applicable(d, k, cond.reach):
                continue
            lhs, rhs = cond.sides(k)
            if not cond.satisfied(lhs, rhs):
                return violated(name, k, lhs, rhs, cond.label, note=note, constant=constant)
    status = VerdictStatus.HOLDS_EVERYWHERE if d.certifies(name) else VerdictStatus.HOLDS_ON_WINDOW
    return PredicateVerdict(name, status, constant=constant, note=note)


# ═══════════════════════════════════════════════════
# COMMUTATIVITY AND MOMENTS
# ═══════════════════════════════════════════════════

def _commutativity_sides(d: WeightDiagram):
    return lambda k: (d.y(k.plus(1, 0)) * d.x(k), d.x(k.plus(0, 1)) * d.y(k))


def check_commutative(d: WeightDiagram) -> PredicateVerdict:
    """y_{k+ε1}·x_k = x_{k+ε2}·y_k at every applicable k."""
    if d.window[0] < MIN_WINDOW[0] or d.window[1] < MIN_WINDOW[1]:
        raise WindowError(f"commutativity needs a window of at least {MIN_WINDOW}, got {d.window}")
    return scan(d, events.COMMUTATIVE,
                [Condition("y[k+e1]*x[k] = x[k+e2]*y[k]", (1, 1), _commutativity_sides(d))])


def require_commutative(d: WeightDiagram) -> PredicateVerdict:
    verdict = check_commutative(d)
    if not verdict.holds:
        w = verdict.witness
        raise CommutativityError(
            f"diagram is not commutative at {tuple(w.point)}: "
            f"{format_rational(w.lhs)} != {format_rational(w.rhs)}",
            point=tuple(w.point), lhs=w.lhs, rhs=w.rhs)
    return verdict


def _require_commutative_rectangle(d: WeightDiagram, k: LatticePoint):
    sides = _commutativity_sides(d)
    for j2 in range(k.k2):
        for j1 in range(k.k1):
            j = LatticePoint(j1, j2)
            lhs, rhs = sides(j)
            if lhs != rhs:
                raise CommutativityError(
                    f"moment {tuple(k)} undefined: commutativity fails at {tuple(j)}",
                    point=tuple(j), lhs=lhs, rhs=rhs)


def moment(d: WeightDiagram, k) -> Fraction:
    """γ_k: product along row 0 to k1, then up column k1 to k2."""
    k = as_point(k)
    _require_commutative_rectangle(d, k)
    value = Fraction(1)
    for j in range(k.k1):
        value *= d.x((j, 0))
    for j in range(k.k2):
        value *= d.y((k.k1, j))
    if debug_verify_enabled():
        other = moment_by_columns(d, k)
        if other != value:
            raise CommutativityError(f"moment paths disagree at {tuple(k)}",
                                     point=tuple(k), lhs=value, rhs=other)
    return value


def moment_by_columns(d: WeightDiagram, k) -> Fraction:
    """γ_k along the other path: up column 0, then along row k2."""
    k = as_point(k)
    value = Fraction(1)
    for j in range(k.k2):
        value *= d.y((0, j))
    for j in range(k.k1):
        value *= d.x((j, k.k2))
    return value


def lattice_moments_table(d: WeightDiagram) -> Dict[LatticePoint, Fraction]:
    """All γ_k on the window via γ_{k+ε1} = γ_k·x_k and γ_{k+ε2} = γ_k·y_k."""
    require_commutative(d)
    n1, n2 = d.window
    table: Dict[LatticePoint, Fraction] = {LatticePoint(0, 0): Fraction(1)}
    for k1 in range(1, n1):
        table[LatticePoint(k1, 0)] = table[LatticePoint(k1 - 1, 0)] * d.x((k1 - 1, 0))
    for k2 in range(1, n2):
        for k1 in range(n1):
            table[LatticePoint(k1, k2)] = table[LatticePoint(k1, k2 - 1)] * d.y((k1, k2 - 1))
    return table


# ═══════════════════════════════════════════════════
# GENERATORS
# ═══════════════════════════════════════════════════

def generate_constant(r1_sq, r2_sq, window: Tuple[int, int] = DEFAULT_WINDOW) -> WeightDiagram:
    """x ≡ r1², y ≡ r2²: the Helton–Howe shift up to constant multiples."""
    r1_sq, r2_sq = parse_rational(r1_sq), parse_rational(r2_sq)
    if r1_sq <= 0 or r2_sq <= 0:
        raise InputError("constant weights must be positive")
    return WeightDiagram(window, lambda k1, k2: r1_sq, lambda k1, k2: r2_sq,
                         TailRule.CONSTANT_EXTENSION, kind="constant",
                         params={"r1_sq": r1_sq, "r2_sq": r2_sq}, memoize=False)


def helton_howe(window: Tuple[int, int] = DEFAULT_WINDOW) -> WeightDiagram:
    return generate_constant(1, 1, window)


def generate_flat_above_row_zero(a, y00, C, window: Tuple[int, int] = DEFAULT_WINDOW) -> WeightDiagram:
    """Rows k2 ≥ 1 constant (x = a, y = C − a); row 0 forced by commutativity.

    y_{0,0} = y00, y_{k+1,0} = a·y_{k,0}/x_{k,0}, x_{k,0} = C − y_{k,0}, so
    x_k + y_k = C everywhere.
    """
    a, y00, C = parse_rational(a), parse_rational(y00), parse_rational(C)
    if not 0 < a < C:
        raise InputError(f"a must lie in (0, C), got a={format_rational(a)}, C={format_rational(C)}")
    if not 0 < y00 < C:
        raise InputError(f"y00 must lie in (0, C), got y00={format_rational(y00)}")

    row0_y: List[Fraction] = [y00]
    lock = threading.Lock()

    def row0(k1: int) -> Fraction:
        with lock:
            while len(row0_y) <= k1:
                prev = row0_y[-1]
                nxt = a * prev / (C - prev)
                if not 0 < nxt < C:
                    raise InputError(f"row-0 recurrence leaves (0, C) at k1={len(row0_y)}")
                row0_y.append(nxt)
            return row0_y[k1]

    def x_fn(k1, k2):
        return a if k2 > 0 else C - row0(k1)

    def y_fn(k1, k2):
        return C - a if k2 > 0 else row0(k1)

    return WeightDiagram(window, x_fn, y_fn, TailRule.GENERATOR, kind="flat_above_row_zero",
                         params={"a": a, "y00": y00, "C": C},
                         certified=frozenset({events.COMMUTATIVE, events.SPHERICAL,
                                              events.SPHERICAL_MOMENTS, events.SPHERICAL_FIXED}))


def generate_TS(row0_x: Sequence, y00, window: Tuple[int, int] = None,
                extend_constant: bool = False) -> WeightDiagram:
    """Shifts whose toral and spherical Aluthge transforms agree.

    x_(k1,k2) = row0_x[k1+k2] and y_(k1,k2) = row0_x[k1+k2]·y00/row0_x[0]. With
    extend_constant the last supplied entry repeats forever.
    """
    row = [parse_rational(v) for v in row0_x]
    y00 = parse_rational(y00)
    if not row:
        raise InputError("row0_x is empty")
    if any(v <= 0 for v in row) or y00 <= 0:
        raise InputError("TS weights must be positive")
    ratio = y00 / row[0]

    def entry(n: int) -> Fraction:
        if n < len(row):
            return row[n]
        if extend_constant:
            return row[-1]
        raise InputError(f"row0_x has no entry {n} and no tail rule")

    if window is None:
        window = DEFAULT_WINDOW if extend_constant else ((len(row) + 1) // 2,) * 2
    tail = TailRule.GENERATOR if extend_constant else TailRule.NONE
    return WeightDiagram(window, lambda k1, k2: entry(k1 + k2),
                         lambda k1, k2: entry(k1 + k2) * ratio, tail, kind="ts",
                         params={"row0_x": row, "y00": y00, "extend_constant": extend_constant},
                         certified=frozenset({events.COMMUTATIVE, events.TRANSFORMS_AGREE,
                                              events.TORAL_COMMUTES}),
                         memoize=False)
