"""
core/linalg.py — Exact linear algebra over Fraction

Matrices are numpy object arrays holding fractions.Fraction, so every row
operation stays exact. Gauss–Jordan elimination gives rank, reduced row
echelon form and null relations; symmetric elimination gives an exact
positive-semidefiniteness test without eigenvalues.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.errors import InputError, NoRepresentingMeasure

logger = logging.getLogger(__name__)


def to_matrix(rows: Sequence[Sequence]) -> np.ndarray:
    """Copy a nested sequence into an object array of Fractions."""
    if len(rows) == 0:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged matrix")
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            out[i, j] = Fraction(value)
    return out


def is_symmetric(A: np.ndarray) -> bool:
    n, m = A.shape
    if n != m:
        return False
    return all(A[i, j] == A[j, i] for i in range(n) for j in range(i + 1, n))


def reduced_row_echelon(A: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Gauss–Jordan elimination. Returns (R, pivot_columns)."""
    R = to_matrix(A.tolist()) if A.size else A.copy()
    n_rows, n_cols = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        # first nonzero entry at or below `row`
        source = next((r for r in range(row, n_rows) if R[r, col] != 0), None)
        if source is None:
            continue
        if source != row:
            R[[row, source], :] = R[[source, row], :]
        R[row, :] = R[row, :] / R[row, col]
        for r in range(n_rows):
            if r != row and R[r, col] != 0:
                R[r, :] = R[r, :] - R[r, col] * R[row, :]
        pivots.append(col)
        row += 1
    return R, pivots


def rank(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    _, pivots = reduced_row_echelon(A)
    return len(pivots)


def symmetric_pivots(A: np.ndarray) -> Optional[List[Fraction]]:
    """Symmetric elimination in label order.

    Returns the diagonal pivots when A is positive semidefinite, None
    otherwise. A zero pivot is allowed only if its whole remaining row
    vanishes; a negative pivot means A is not PSD.
    """
    if not is_symmetric(A):
        raise InputError("symmetric matrix required")
    S = to_matrix(A.tolist()) if A.size else A.copy()
    n = S.shape[0]
    pivots: List[Fraction] = []
    for k in range(n):
        pivot = S[k, k]
        if pivot < 0:
            return None
        if pivot == 0:
            if any(S[k, j] != 0 for j in range(k + 1, n)):
                return None
            pivots.append(pivot)
            continue
        # Schur complement of the pivot
        column = S[k + 1:, k].copy()
        row = S[k, k + 1:].copy()
        S[k + 1:, k + 1:] = S[k + 1:, k + 1:] - np.multiply.outer(column, row) / pivot
        pivots.append(pivot)
    return pivots


def is_psd(A: np.ndarray) -> bool:
    return symmetric_pivots(A) is not None


def solve_exact(A: np.ndarray, b: Sequence) -> List[Fraction]:
    """Unique solution of a (possibly overdetermined) consistent system."""
    n_rows, n_cols = A.shape
    if len(b) != n_rows:
        raise InputError("right-hand side length does not match the matrix")
    augmented = np.empty((n_rows, n_cols + 1), dtype=object)
    augmented[:, :n_cols] = A
    augmented[:, n_cols] = [Fraction(v) for v in b]
    R, pivots = reduced_row_echelon(augmented)
    if n_cols in pivots:
        raise NoRepresentingMeasure("linear system is inconsistent")
    if len(pivots) < n_cols:
        raise NoRepresentingMeasure("linear system is underdetermined")
    return [R[i, n_cols] for i in range(n_cols)]
