"""Test the quasinormality hierarchy and the one-variable helpers"""
from fractions import Fraction as F

import pytest

from core.errors import CommutativityError, InputError, WindowError
from shifts.classify import (
    OneVarShift, classify, is_coordinatewise_hyponormal, is_jointly_quasinormal,
    is_matricially_quasinormal, is_spherical_isometry, is_spherically_quasinormal,
    is_spherically_quasinormal_by_moments, onevar_is_hyponormal, onevar_is_quasinormal,
    onevar_power_components,
)
from shifts.lattice import LatticePoint, TailRule, VerdictStatus, WeightDiagram, generate_TS
from tests.helpers import random_diagram


# ── Spherical quasinormality ──────────────────────────────────

def test_ex1_is_spherical_with_constant_one(ex1):
    verdict = is_spherically_quasinormal(ex1)
    assert verdict.status is VerdictStatus.HOLDS_EVERYWHERE
    assert verdict.constant == 1


def test_ex1_moment_criterion_agrees(ex1):
    verdict = is_spherically_quasinormal_by_moments(ex1)
    assert verdict.holds
    assert verdict.constant == 1


def test_ex1_is_a_spherical_isometry(ex1):
    assert is_spherical_isometry(ex1).holds


def test_helton_howe_is_spherical_but_not_isometry(helton_howe):
    assert is_spherically_quasinormal(helton_howe).constant == 2
    verdict = is_spherical_isometry(helton_howe)
    assert verdict.status is VerdictStatus.VIOLATED
    assert (verdict.witness.lhs, verdict.witness.rhs) == (2, 1)


def test_spherical_witness_is_first_failure():
    # row 0: x + y = 2, 3; row 1: 2, 2
    d = WeightDiagram.from_tables([["1", "2"], ["1", "1"]], [["1", "1"], ["1", "1"]])
    verdict = is_spherically_quasinormal(d)
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.witness.point == LatticePoint(1, 0)
    assert (verdict.witness.lhs, verdict.witness.rhs) == (3, 2)


def test_spherical_on_window_only_without_tail():
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "1"], ["1", "1"]])
    assert is_spherically_quasinormal(d).status is VerdictStatus.HOLDS_ON_WINDOW


def test_debug_verify_cross_checks_moment_criterion(ex1, monkeypatch):
    monkeypatch.setenv("SHIFTLAB_DEBUG_VERIFY", "1")
    assert is_spherically_quasinormal(ex1).holds


# ── Joint / matricial ─────────────────────────────────────────

def test_ex1_is_not_jointly_quasinormal(ex1):
    verdict = is_jointly_quasinormal(ex1)
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.witness.point == LatticePoint(0, 0)
    assert (verdict.witness.lhs, verdict.witness.rhs) == (F(1, 3), F(1, 6))
    assert verdict.witness.condition == "y[k] = y[k+e1]"


def test_joint_needs_a_commuting_diagram():
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "2"], ["1", "1"]])
    with pytest.raises(CommutativityError):
        is_jointly_quasinormal(d)


def test_helton_howe_is_jointly_quasinormal(helton_howe):
    assert is_jointly_quasinormal(helton_howe).status is VerdictStatus.HOLDS_EVERYWHERE


def test_matricial_never_holds(ex1, helton_howe):
    for d in (ex1, helton_howe):
        verdict = is_matricially_quasinormal(d)
        assert verdict.status is VerdictStatus.VIOLATED
        assert verdict.witness.lhs == 0
        assert verdict.witness.rhs > 0
    assert is_matricially_quasinormal(ex1).witness.rhs == F(2, 3) * F(1, 6) * F(1, 3)


def test_joint_iff_globally_constant(rng):
    """Over commuting tail-ruled diagrams, joint quasinormality means constant x and y."""
    constant_seen = 0
    for _ in range(200):
        d = random_diagram(rng, window=(4, 4))
        xs = {v for row in d.table("x") for v in row}
        ys = {v for row in d.table("y") for v in row}
        is_constant = len(xs) == 1 and len(ys) == 1
        constant_seen += is_constant
        assert is_jointly_quasinormal(d).holds == is_constant
    assert constant_seen > 0


def test_joint_implies_spherical(rng):
    for _ in range(100):
        d = random_diagram(rng, window=(4, 4))
        if is_jointly_quasinormal(d).holds:
            assert is_spherically_quasinormal(d).holds


# ── Hyponormality ─────────────────────────────────────────────

def test_ex1_is_coordinatewise_hyponormal(ex1):
    assert is_coordinatewise_hyponormal(ex1).status is VerdictStatus.HOLDS_ON_WINDOW


def test_decreasing_row_is_not_hyponormal():
    d = WeightDiagram.from_tables([["2", "1"], ["2", "1"]], [["1", "1"], ["1", "1"]])
    verdict = is_coordinatewise_hyponormal(d)
    assert verdict.status is VerdictStatus.VIOLATED
    assert (verdict.witness.lhs, verdict.witness.rhs) == (2, 1)


# ── Classification report ─────────────────────────────────────

def test_classify_ex1(ex1):
    report = classify(ex1)
    assert report.spherical.constant == 1
    assert report.spherical.everywhere
    assert not report.joint.holds
    assert not report.matricial.holds
    assert report.subnormal_implied
    assert report.spherical_fixed.status is report.spherical.status
    out = report.to_dict()
    assert out["spherical"] == {"status": "holds-everywhere", "constant": "1"}
    assert out["subnormal"]["implied"] is True


def test_classify_raises_on_non_commuting_diagram():
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "2"], ["1", "1"]])
    with pytest.raises(CommutativityError):
        classify(d)


def test_classify_notes_window_scope():
    d = generate_TS(["1", "1", "1"], "1")
    report = classify(d)
    assert report.joint.status is VerdictStatus.HOLDS_ON_WINDOW
    assert report.notes


# ── One-variable shifts ───────────────────────────────────────

def test_onevar_constant_is_quasinormal():
    verdict = onevar_is_quasinormal(OneVarShift(("2", "2", "2")))
    assert verdict.status is VerdictStatus.HOLDS_ON_WINDOW
    assert verdict.constant == 2
    tail = OneVarShift(("2",), TailRule.CONSTANT_EXTENSION)
    assert onevar_is_quasinormal(tail).status is VerdictStatus.HOLDS_EVERYWHERE


def test_onevar_non_constant_witness():
    verdict = onevar_is_quasinormal(OneVarShift(("1", "1", "3")))
    assert verdict.witness.point is None
    assert verdict.witness.index == 2
    assert verdict.witness.to_dict() == {"i": 2, "lhs": "3", "rhs": "1", "condition": "w[i] = w[0]"}
    assert (verdict.witness.lhs, verdict.witness.rhs) == (3, 1)


def test_onevar_square_components():
    components = onevar_power_components(OneVarShift(("1", "2", "3", "4", "5")), 2)
    assert [c.w for c in components] == [(2, 12), (6, 20)]


def test_onevar_components_with_constant_tail():
    components = onevar_power_components(OneVarShift(("1", "2"), TailRule.CONSTANT_EXTENSION), 2)
    assert components[0].w == (2, 4, 4)
    assert components[1].w == (4, 4, 4)


def test_onevar_components_need_enough_weights():
    with pytest.raises(WindowError):
        onevar_power_components(OneVarShift(("1",)), 2)


def test_alternating_weights_have_constant_squares():
    # not monotone, so constant square components do not force constant weights
    components = onevar_power_components(OneVarShift(("1", "2", "1", "2", "1", "2")), 2)
    assert all(onevar_is_quasinormal(c).holds for c in components)
    assert not onevar_is_quasinormal(OneVarShift(("1", "2", "1", "2", "1", "2"))).holds


def test_monotone_with_constant_squares_is_constant(rng):
    """Monotone weights whose square components are both constant are constant."""
    constant_seen = 0
    for _ in range(500):
        length = rng.randint(4, 8)
        values = [F(rng.randint(1, 3), rng.choice((1, 2))) for _ in range(length)]
        if rng.random() < 0.2:
            values = [values[0]] * length
        weights = sorted(values, reverse=rng.random() < 0.5)
        s = OneVarShift(tuple(weights))
        components = onevar_power_components(s, 2)
        if all(onevar_is_quasinormal(c).holds for c in components):
            constant_seen += 1
            assert onevar_is_quasinormal(s).holds
        if len(set(weights)) == 1:
            assert onevar_is_quasinormal(s).holds
    assert constant_seen > 0


def test_onevar_hyponormal():
    assert onevar_is_hyponormal(OneVarShift(("1", "1", "2"))).holds
    verdict = onevar_is_hyponormal(OneVarShift(("2", "1")))
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.witness.index == 0
    assert (verdict.witness.lhs, verdict.witness.rhs) == (2, 1)


def test_onevar_rejects_generator_tail():
    with pytest.raises(InputError):
        OneVarShift(("1",), TailRule.GENERATOR)
