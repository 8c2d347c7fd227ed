"""Shared pytest fixtures for all tests"""
import os
import random
from fractions import Fraction

import pytest

# Keep the debug cross-checks off unless a test turns them on
os.environ.setdefault("SHIFTLAB_DEBUG_VERIFY", "0")

F = Fraction


@pytest.fixture
def ex1():
    """Flat above row 0 with a = y00 = 1/3, C = 1 (8×8 window)"""
    from shifts.lattice import generate_flat_above_row_zero
    return generate_flat_above_row_zero(F(1, 3), F(1, 3), 1)


@pytest.fixture
def helton_howe():
    from shifts.lattice import helton_howe as make
    return make()


@pytest.fixture
def counterexample_measure():
    """(s, u) = (0, 1/2): t = 9/8, v = 7/8"""
    from shifts.berger import build_counterexample
    return build_counterexample(0, F(1, 2))


@pytest.fixture
def thm4_measure():
    """½δ_(0,2) + ½δ_(1,1)"""
    from shifts.berger import theorem4_measure
    return theorem4_measure(F(1, 2), 1)


@pytest.fixture
def rng():
    """Seeded generator for property tests"""
    return random.Random(20240611)


