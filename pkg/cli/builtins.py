"""
cli/builtins.py — Worked examples shipped with the command line

    ex1            flat_above_row_zero(a=1/3, y00=1/3, C=1)
    helton-howe    all weights 1
    thm3           shift of the two-atom counterexample (s, u) = (0, 1/2)
    thm4:x0,q      shift of (1 − x0)δ_(0,1+q) + x0·δ_(1,q)
    remark:s       shift of ½δ_(s,1−s) + ½δ_(1−s,s)
"""
from typing import Optional, Tuple

from core.errors import InputError
from shifts.berger import (
    AtomicMeasure, build_counterexample, remark_measure, shift_from_measure, theorem4_measure,
)
from shifts.lattice import WeightDiagram, generate_flat_above_row_zero, helton_howe

BUILTIN_NAMES = ("ex1", "helton-howe", "thm3", "thm4:x0,q", "remark:s")


def _split(name: str) -> Tuple[str, Optional[str]]:
    head, _, arg = name.partition(":")
    return head.strip().lower(), (arg.strip() or None)


def builtin_measure(name: str) -> Optional[AtomicMeasure]:
    """The Berger measure behind a builtin, or None for ex1."""
    head, arg = _split(name)
    if head == "helton-howe":
        return AtomicMeasure.of((1, 1, 1))
    if head == "thm3":
        return build_counterexample(0, "1/2")
    if head == "thm4":
        if not arg or "," not in arg:
            raise InputError("thm4 needs parameters: thm4:x0,q (e.g. thm4:1/2,1)")
        x0, q = (part.strip() for part in arg.split(",", 1))
        return theorem4_measure(x0, q, allow_helton_howe=True)
    if head == "remark":
        if not arg:
            raise InputError("remark needs a parameter: remark:s with s in [0, 1/2)")
        return remark_measure(arg)
    if head == "ex1":
        return None
    raise InputError(f"unknown builtin {name!r}; choose one of {', '.join(BUILTIN_NAMES)}")


def builtin_diagram(name: str, window: Tuple[int, int]) -> WeightDiagram:
    head, _ = _split(name)
    if head == "ex1":
        return generate_flat_above_row_zero("1/3", "1/3", 1, window)
    if head == "helton-howe":
        return helton_howe(window)
    return shift_from_measure(builtin_measure(name), window)
