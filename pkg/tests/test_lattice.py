"""Test weight diagrams, tail rules, commutativity and moments"""
from fractions import Fraction as F

import pytest

from core.errors import CommutativityError, InputError, WindowError
from shifts.lattice import (
    LatticePoint, TailRule, VerdictStatus, WeightDiagram, check_commutative, generate_constant,
    generate_flat_above_row_zero, generate_TS, lattice_moments_table, moment, moment_by_columns,
    require_commutative, weight_x, weight_y,
)


def test_ex1_row_zero(ex1):
    assert [ex1.x((k, 0)) for k in range(4)] == [F(2, 3), F(5, 6), F(14, 15), F(41, 42)]
    assert [ex1.y((k, 0)) for k in range(4)] == [F(1, 3), F(1, 6), F(1, 15), F(1, 42)]


def test_ex1_rows_above_zero_are_flat(ex1):
    for k2 in range(1, 8):
        for k1 in range(8):
            assert weight_x(ex1, (k1, k2)) == F(1, 3)
            assert weight_y(ex1, (k1, k2)) == F(2, 3)


def test_generator_reaches_past_window(ex1):
    assert ex1.window == (8, 8)
    assert ex1.x((20, 0)) + ex1.y((20, 0)) == 1


def test_no_tail_rule_refuses_outside_access():
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "1"], ["1", "1"]])
    assert d.tail_rule is TailRule.NONE
    with pytest.raises(InputError):
        d.x((2, 0))


def test_constant_extension_clamps():
    d = WeightDiagram.from_tables([["1", "2"], ["3", "4"]], [["1", "1"], ["1", "1"]],
                                  TailRule.CONSTANT_EXTENSION)
    assert d.x((5, 0)) == 2
    assert d.x((0, 7)) == 3
    assert d.x((9, 9)) == 4


def test_weights_must_be_positive():
    with pytest.raises(InputError):
        WeightDiagram.from_tables([["1", "0"]], [["1", "1"]])


def test_floats_are_refused():
    with pytest.raises(InputError):
        WeightDiagram.from_tables([["0.5", "1"]], [["1", "1"]])


def test_ragged_tables_are_refused():
    with pytest.raises(InputError):
        WeightDiagram.from_tables([["1", "1"], ["1"]], [["1", "1"], ["1", "1"]])


def test_commutativity_holds_for_generators(ex1, helton_howe):
    assert check_commutative(ex1).status is VerdictStatus.HOLDS_EVERYWHERE
    assert check_commutative(helton_howe).status is VerdictStatus.HOLDS_EVERYWHERE


def test_commutativity_witness():
    # y[(1,0)]·x[(0,0)] = 2 but x[(0,1)]·y[(0,0)] = 1
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "2"], ["1", "1"]])
    verdict = check_commutative(d)
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.witness.point == LatticePoint(0, 0)
    assert (verdict.witness.lhs, verdict.witness.rhs) == (2, 1)
    with pytest.raises(CommutativityError) as excinfo:
        require_commutative(d)
    assert excinfo.value.point == (0, 0)


def test_commutativity_needs_two_by_two():
    d = WeightDiagram.from_tables([["1", "1", "1"]], [["1", "1", "1"]])
    with pytest.raises(WindowError):
        check_commutative(d)


def test_moments_of_ex1(ex1):
    assert moment(ex1, (0, 0)) == 1
    assert moment(ex1, (2, 0)) == F(5, 9)
    assert moment(ex1, (1, 1)) == F(1, 9)
    assert moment_by_columns(ex1, (1, 1)) == F(1, 9)


def test_moment_paths_agree_under_debug_verify(ex1, monkeypatch):
    monkeypatch.setenv("SHIFTLAB_DEBUG_VERIFY", "1")
    for k1 in range(4):
        for k2 in range(4):
            assert moment(ex1, (k1, k2)) == moment_by_columns(ex1, (k1, k2))


def test_moment_refuses_non_commuting_rectangle():
    d = WeightDiagram.from_tables([["1", "1"], ["1", "1"]], [["1", "2"], ["1", "1"]])
    assert moment(d, (1, 0)) == 1
    with pytest.raises(CommutativityError):
        moment(d, (1, 1))


def test_moments_table_matches_moment(ex1):
    table = lattice_moments_table(ex1)
    assert len(table) == 64
    for k, value in table.items():
        assert value == moment(ex1, k)


def test_flat_recurrence_rejects_bad_parameters():
    with pytest.raises(InputError):
        generate_flat_above_row_zero(1, F(1, 2), 1)
    with pytest.raises(InputError):
        generate_flat_above_row_zero(F(1, 3), F(3, 2), 1)


def test_flat_recurrence_leaving_the_interval():
    # y00 above C − a grows until it leaves (0, C)
    with pytest.raises(InputError):
        generate_flat_above_row_zero(F(9, 10), F(9, 10), 1)


def test_constant_generator_certifies_everything():
    d = generate_constant(2, 3, (3, 3))
    assert d.tail_rule is TailRule.CONSTANT_EXTENSION
    assert d.certifies("anything")


def test_ts_default_window_without_tail():
    d = generate_TS(["1", "2", "3", "4", "5"], "1/2")
    assert d.window == (3, 3)
    assert d.tail_rule is TailRule.NONE
    assert d.x((1, 2)) == 4
    assert d.y((1, 2)) == 2
    assert check_commutative(d).holds


def test_ts_with_constant_tail():
    d = generate_TS(["1", "2"], "1", extend_constant=True)
    assert d.window == (8, 8)
    assert d.x((30, 30)) == 2


def test_with_window_cannot_grow_untailed():
    d = generate_TS(["1", "2", "3"], "1")
    with pytest.raises(WindowError):
        d.with_window((5, 5))
    assert d.with_window((1, 1)).window == (1, 1)


def test_verdict_dict_shape(ex1):
    verdict = check_commutative(ex1)
    assert verdict.to_dict() == {"status": "holds-everywhere"}
