"""Test tools layer"""
import json
from fractions import Fraction as F

import pytest

from core.errors import InputError
from shifts.berger import shift_from_measure
from shifts.lattice import TailRule, WeightDiagram, generate_TS
from shifts.moments import sequence_from_measure
from tools.file_formats import (
    diagram_from_dict, diagram_to_dict, dump_diagram, dump_measure, dump_sequence, dumps,
    load_diagram, load_measure, load_sequence,
)
from tools.report_storage import ReportStorage


def test_explicit_diagram_file(tmp_path):
    d = WeightDiagram.from_tables([["1/2", "1"], ["1", "2"]], [["1", "1"], ["1/2", "1"]],
                                  TailRule.CONSTANT_EXTENSION)
    path = tmp_path / "explicit.json"
    dump_diagram(d, path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["x"] == [["1/2", "1"], ["1", "2"]]
    assert data["params"]["tail_rule"] == "constant-extension"
    loaded = load_diagram(path)
    assert loaded.tail_rule is TailRule.CONSTANT_EXTENSION
    assert loaded.table("x") == d.table("x")


def test_generator_diagram_reloads_from_params(ex1):
    data = diagram_to_dict(ex1)
    assert data["kind"] == "flat_above_row_zero"
    assert data["params"] == {"a": "1/3", "y00": "1/3", "C": "1"}
    loaded = diagram_from_dict(data)
    assert loaded.x((20, 0)) == ex1.x((20, 0))


def test_generator_tables_must_match(ex1):
    data = diagram_to_dict(ex1)
    data["x"][0][0] = "1/2"
    with pytest.raises(InputError):
        diagram_from_dict(data)


def test_measure_diagram_file(tmp_path, counterexample_measure):
    d = shift_from_measure(counterexample_measure, (3, 3))
    path = tmp_path / "measure_shift.json"
    dump_diagram(d, path)
    loaded = load_diagram(path)
    assert loaded.kind == "from_measure"
    assert loaded.y((1, 0)) == F(7, 8)


def test_ts_params_reload():
    d = generate_TS(["1", "2", "3"], "1/2")
    loaded = diagram_from_dict(diagram_to_dict(d))
    assert loaded.window == (2, 2)
    assert loaded.y((1, 1)) == F(3, 2)


def test_malformed_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_diagram(bad)
    with pytest.raises(InputError):
        load_diagram(tmp_path / "missing.json")
    with pytest.raises(InputError):
        diagram_from_dict({"kind": "constant", "window": [2, 2], "params": {}})
    with pytest.raises(InputError):
        diagram_from_dict({"window": [1, 1], "x": [["0.5"]], "y": [["1"]]})


def test_measure_and_sequence_files(tmp_path, thm4_measure):
    dump_measure(thm4_measure, tmp_path / "mu.json")
    assert load_measure(tmp_path / "mu.json") == thm4_measure
    g = sequence_from_measure(thm4_measure, 2)
    dump_sequence(g, tmp_path / "g.json")
    assert load_sequence(tmp_path / "g.json").gamma == g.gamma


def test_dumps_is_deterministic(ex1):
    assert dumps(diagram_to_dict(ex1)) == dumps(diagram_to_dict(ex1))
    assert dumps({"b": F(1, 2), "a": [F(3)]}) == '{\n  "a": [\n    "3"\n  ],\n  "b": "1/2"\n}\n'


def test_report_storage(tmp_path):
    storage = ReportStorage(str(tmp_path))
    path = storage.save("ex1-classify", {"spherical": {"status": "holds-everywhere", "constant": F(1)}})
    assert path.endswith("ex1-classify.json")
    assert storage.load("ex1-classify") == {"spherical": {"status": "holds-everywhere", "constant": "1"}}
    assert storage.list_reports() == ["ex1-classify"]
    assert storage.delete("ex1-classify")
    assert storage.load("ex1-classify") == {}


def test_report_storage_rejects_paths(tmp_path):
    storage = ReportStorage(str(tmp_path))
    with pytest.raises(InputError):
        storage.save("../escape", {})
