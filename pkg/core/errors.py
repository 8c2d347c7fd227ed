"""
core/errors.py — Exception hierarchy shared by every module

Failing predicates are NOT errors: they come back as a violated
PredicateVerdict. These exceptions cover bad input, unsupported requests
and mathematically inconsistent data.
"""
from typing import Any, Optional, Tuple


class ShiftLabError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""
    exit_code = 1


class ConfigError(ShiftLabError):
    pass


class InputError(ShiftLabError):
    """Malformed rationals, bad parameters, out-of-window access."""
    pass


class WindowError(InputError):
    """The window is too small for the requested analysis."""
    pass


class CommutativityError(ShiftLabError):
    """A diagram fails y_{k+ε1}·x_k = x_{k+ε2}·y_k somewhere it must hold."""
    exit_code = 2

    def __init__(self, message: str, point: Tuple[int, int] = None,
                 lhs: Any = None, rhs: Any = None):
        super().__init__(message)
        self.point = point
        self.lhs = lhs
        self.rhs = rhs


class UnsupportedError(ShiftLabError):
    """Requests outside the supported scope (rank > 2, irrational atoms)."""
    exit_code = 3


class NoRepresentingMeasure(ShiftLabError):
    """Moment data that no finitely atomic measure on R₊² can produce."""
    pass


class IterationExhausted(ShiftLabError):
    """Aluthge iteration ran out of window; `partial` holds the steps done."""

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message)
        self.partial = partial
