"""
shifts/moments.py — Truncated bivariate moment matrices

Index convention: γ_ij = ∫ y^i x^j dμ(x, y), i is the y-power. A measure's
first coordinate s plays x and its second coordinate t plays y, so
γ_ij = γ^lattice_(j,i). Rows and columns of M(n) are labeled
1, X, Y, X², XY, Y², …, X^n, …, Y^n and the entry at (u, v) with
u = Y^a X^b, v = Y^c X^d is γ_(a+c, b+d).

Everything is exact (Fractions). Atom recovery is limited to rank ≤ 2 flat
data and to rational atoms.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np
import sympy as sp

from core import linalg
from core.config import MAX_RECOVERY_RANK
from core.errors import InputError, NoRepresentingMeasure, UnsupportedError
from core.rationals import format_rational, parse_rational
from shifts.berger import Atom, AtomicMeasure
from shifts.lattice import LatticePoint

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]        # (y-power a, x-power b)


# ═══════════════════════════════════════════════════
# SEQUENCES
# ═══════════════════════════════════════════════════

@dataclass
class BiMomentSequence:
    n: int
    gamma: Dict[Tuple[int, int], Fraction]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("moment order must be nonnegative")
        self.gamma = {(int(i), int(j)): parse_rational(v) for (i, j), v in self.gamma.items()}
        if self.gamma.get((0, 0), Fraction(0)) <= 0:
            raise InputError("γ_00 must be positive")

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        try:
            return self.gamma[ij]
        except KeyError:
            raise InputError(f"moment γ_{ij[0]}{ij[1]} is missing")

    def truncate(self, n: int) -> "BiMomentSequence":
        return BiMomentSequence(n, {ij: g for ij, g in self.gamma.items() if ij[0] + ij[1] <= 2 * n})

    def to_dict(self) -> Dict:
        keys = sorted(self.gamma, key=lambda ij: (ij[0] + ij[1], ij[1] - ij[0]))
        return {"n": self.n, "gamma": {f"{i},{j}": format_rational(self.gamma[(i, j)]) for i, j in keys}}


def sequence_from_measure(mu: AtomicMeasure, n: int) -> BiMomentSequence:
    """Power sums γ_ij = Σ ρ t^i s^j for i + j ≤ 2n."""
    gamma = {}
    for total in range(2 * n + 1):
        for i in range(total + 1):
            j = total - i
            gamma[(i, j)] = sum((a.rho * a.t ** i * a.s ** j for a in mu.atoms), Fraction(0))
    return BiMomentSequence(n, gamma)


def lattice_to_bivariate(lattice: Dict, n: int) -> BiMomentSequence:
    """γ^lattice_(k1,k2) (k1 = x-power) to γ_ij (i = y-power)."""
    gamma = {}
    for (k1, k2), g in lattice.items():
        if k1 + k2 <= 2 * n:
            gamma[(k2, k1)] = g
    return BiMomentSequence(n, gamma)


def bivariate_to_lattice(g: BiMomentSequence) -> Dict[LatticePoint, Fraction]:
    return {LatticePoint(j, i): v for (i, j), v in g.gamma.items()}


# ═══════════════════════════════════════════════════
# MOMENT MATRIX
# ═══════════════════════════════════════════════════

def monomials(n: int) -> List[Monomial]:
    """1, X, Y, X², XY, Y², … in degree-graded order."""
    return [(a, degree - a) for degree in range(n + 1) for a in range(degree + 1)]


def monomial_name(label: Monomial) -> str:
    a, b = label
    if a == 0 and b == 0:
        return "1"
    part = lambda var, p: "" if p == 0 else (var if p == 1 else f"{var}^{p}")
    return part("X", b) + part("Y", a)


@dataclass
class MomentMatrix:
    n: int
    entries: np.ndarray
    labels: List[Monomial]

    @property
    def names(self) -> List[str]:
        return [monomial_name(label) for label in self.labels]

    def column(self, label: Monomial) -> np.ndarray:
        return self.entries[:, self.labels.index(label)]

    def to_dict(self) -> Dict:
        return {"n": self.n, "labels": self.names,
                "rows": [[format_rational(v) for v in row] for row in self.entries.tolist()]}


def build_moment_matrix(g: BiMomentSequence, n: int = None) -> MomentMatrix:
    """M(n) with entry γ_(a+c, b+d) at (Y^a X^b, Y^c X^d)."""
    n = g.n if n is None else n
    if n > g.n:
        raise InputError(f"M({n}) needs moments through order {2 * n}; the sequence stops at {2 * g.n}")
    labels = monomials(n)
    rows = [[g[(a + c, b + d)] for (c, d) in labels] for (a, b) in labels]
    M = MomentMatrix(n, linalg.to_matrix(rows), labels)
    if not is_hankel_blocked(M):
        raise AssertionError("moment matrix blocks must be Hankel")
    return M


def is_hankel_blocked(M: MomentMatrix) -> bool:
    """Each block M[i,j] is constant along its cross-diagonals."""
    by_block: Dict[Tuple[int, int, int], Fraction] = {}
    for r, (a, b) in enumerate(M.labels):
        for c, (e, f) in enumerate(M.labels):
            key = (a + b, e + f, a + e)          # block (deg row, deg col), cross-diagonal
            value = M.entries[r, c]
            if by_block.setdefault(key, value) != value:
                return False
    return linalg.is_symmetric(M.entries)


def psd_exact(M: MomentMatrix) -> bool:
    return linalg.is_psd(M.entries)


def rank_exact(M: MomentMatrix) -> int:
    return linalg.rank(M.entries)


@dataclass(frozen=True)
class ColumnRelation:
    """target = Σ coefficients[label]·label over earlier-labeled columns."""
    target: Monomial
    coefficients: Tuple[Tuple[Monomial, Fraction], ...]

    def as_dict(self) -> Dict[Monomial, Fraction]:
        return dict(self.coefficients)

    def __str__(self):
        terms = []
        for label, c in self.coefficients:
            name = monomial_name(label)
            if name == "1":
                terms.append(format_rational(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{format_rational(c)}*{name}")
        rhs = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{monomial_name(self.target)} = {rhs}"


def column_relations(M: MomentMatrix) -> List[ColumnRelation]:
    """Basis of column dependencies, each later column in terms of the pivot columns."""
    R, pivots = linalg.reduced_row_echelon(M.entries)
    relations = []
    for col, target in enumerate(M.labels):
        if col in pivots:
            continue
        coeffs = tuple((M.labels[p], R[row, col]) for row, p in enumerate(pivots) if R[row, col] != 0)
        relations.append(ColumnRelation(target, coeffs))
    return relations


def relation_holds(M: MomentMatrix, relation: ColumnRelation) -> bool:
    residual = M.column(relation.target).copy()
    for label, c in relation.coefficients:
        residual = residual - c * M.column(label)
    return all(v == 0 for v in residual)


def flatness_profile(g: BiMomentSequence) -> List[int]:
    """rank M(0), rank M(1), …, rank M(n)."""
    return [rank_exact(build_moment_matrix(g, level)) for level in range(g.n + 1)]


def flat_extension(g: BiMomentSequence) -> bool:
    """rank M(n) = rank M(n−1)."""
    if g.n < 1:
        raise InputError("flatness compares M(n) with M(n−1); n must be at least 1")
    return rank_exact(build_moment_matrix(g, g.n)) == rank_exact(build_moment_matrix(g, g.n - 1))


# ═══════════════════════════════════════════════════
# ATOM RECOVERY
# ═══════════════════════════════════════════════════

def _to_fraction(value) -> Fraction:
    value = sp.nsimplify(value) if not isinstance(value, sp.Rational) else value
    if not (value.is_real and value.is_rational):
        raise UnsupportedError(f"atom coordinate {value} is not rational; recovery does not approximate")
    return Fraction(int(value.p), int(value.q))


def _support_from_relations(M: MomentMatrix, expected: int) -> List[Tuple[Fraction, Fraction]]:
    """Common zeros of the column-relation polynomials of degree ≤ 2."""
    x, y = sp.symbols("x y")
    polys = []
    for relation in column_relations(M):
        a, b = relation.target
        if a + b > 2:
            continue
        poly = y ** a * x ** b
        for (c, d), coeff in relation.coefficients:
            poly -= sp.Rational(coeff.numerator, coeff.denominator) * y ** c * x ** d
        polys.append(sp.expand(poly))
    solutions = sp.solve(polys, [x, y], dict=True)
    points = []
    for sol in solutions:
        if x not in sol or y not in sol or sol[x].free_symbols or sol[y].free_symbols:
            raise UnsupportedError("column relations leave a curve of solutions, not finitely many atoms")
        points.append((_to_fraction(sol[x]), _to_fraction(sol[y])))
    points = sorted(set(points))
    if len(points) != expected:
        raise NoRepresentingMeasure(f"column relations cut out {len(points)} points, rank is {expected}")
    return points


def recover_atoms(g: BiMomentSequence) -> AtomicMeasure:
    """Representing measure of flat data of rank ≤ 2."""
    if g.n < 1:
        raise InputError("recovery needs moments through order 2 at least")
    M = build_moment_matrix(g)
    if not psd_exact(M):
        raise NoRepresentingMeasure("moment matrix is not positive semidefinite")
    r = rank_exact(M)
    if r > MAX_RECOVERY_RANK:
        raise UnsupportedError(f"rank {r} > {MAX_RECOVERY_RANK}: general flat extensions are not supported")
    if not flat_extension(g):
        raise UnsupportedError(f"M({g.n}) is not a flat extension of M({g.n - 1}); "
                               "pass moments of higher order")
    g00, g01, g10 = g[(0, 0)], g[(0, 1)], g[(1, 0)]
    if r == 1:
        support = [(g01 / g00, g10 / g00)]
        densities = [g00]
    else:
        support = _support_from_relations(M, r)
        system = linalg.to_matrix([[1] * r, [s for s, _ in support], [t for _, t in support]])
        densities = linalg.solve_exact(system, [g00, g01, g10])
    if any(rho <= 0 for rho in densities):
        raise NoRepresentingMeasure("recovered densities are not all positive")
    if any(s < 0 or t < 0 for s, t in support):
        raise NoRepresentingMeasure("recovered atoms leave R₊²")
    mu = AtomicMeasure(tuple(Atom(s, t, rho) for (s, t), rho in zip(support, densities)),
                       probability=(g00 == 1))
    for (i, j), value in g.gamma.items():
        if sum((a.rho * a.t ** i * a.s ** j for a in mu.atoms), Fraction(0)) != value:
            raise NoRepresentingMeasure(f"recovered measure misses γ_{i}{j}")
    logger.debug("recovered %d atoms from M(%d)", len(mu.atoms), g.n)
    return mu
