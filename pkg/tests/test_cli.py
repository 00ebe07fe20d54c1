import json
from pathlib import Path

import pytest

from monodromy.cli import main
from monodromy.fixtures import example_representations, example_space, map_fixtures, triangle_circle
from monodromy.io import InputError, dumps, map_document, parse_document, representation_to_json
from monodromy.linalg import QQ

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def triangle_doc(tmp_path):
    return _write(tmp_path, "triangle.json", map_document(triangle_circle(), QQ, "triangle-circle"))


@pytest.fixture
def reps_doc(tmp_path):
    reps = {str(r): representation_to_json(rho) for r, rho in example_representations().items()}
    return _write(tmp_path, "reps.json", {"field": "Q", "representations": reps})


def test_jordan_on_triangle_circle(capsys, triangle_doc):
    code, out, _ = _run(capsys, "jordan", triangle_doc)
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["field = Q", "theta = 9/10 (auto)", "r=0: (1,1)"]
    assert "r=1:" in lines


def test_jordan_reports_empty_degrees_beyond_dimension(capsys, triangle_doc):
    code, out, _ = _run(capsys, "jordan", triangle_doc, "--rmax", "3")
    assert code == 0
    assert "r=2:" in out.splitlines() and "r=3:" in out.splitlines()


def test_jordan_multiple_thetas(capsys, triangle_doc):
    code, out, _ = _run(capsys, "jordan", triangle_doc, "--theta", "1/4", "--theta", "0")
    assert code == 0
    assert out.count("r=0: (1,1)") == 2
    assert "theta = 1/4" in out and "theta = 0" in out


def test_rep_on_worked_example(capsys, reps_doc):
    code, out, _ = _run(capsys, "rep", reps_doc)
    assert code == 0
    assert out.splitlines() == ["field = Q", "r=0: (1,1)", "r=1: (2,2)", "r=2:"]


def test_rep_trace_shows_reduction_steps(capsys, reps_doc):
    code, out, _ = _run(capsys, "rep", reps_doc, "--trace")
    assert code == 0
    assert "T1: 4x3 -> 3x3" in out and "T2: 3x3 -> 2x2" in out
    assert "A' = [1 -1; 1 3]  B' = [1 0; 0 1]" in out


def test_field_override(capsys, reps_doc):
    code, out, _ = _run(capsys, "rep", reps_doc, "--field", "Fp:5")
    assert code == 0 and "field = Fp:5" in out and "r=1: (2,2)" in out
    code, _, err = _run(capsys, "rep", reps_doc, "--field", "Fp:6")
    assert code == 2 and ("Fp:6" in err or "prime" in err)


def test_novikov_on_circle(capsys, triangle_doc):
    code, out, _ = _run(capsys, "novikov", triangle_doc)
    assert code == 0
    assert "betaN = 0 0" in out.splitlines()
    assert "beta = 1 1" in out.splitlines() and "fiber = 1 0" in out.splitlines()


def test_local_defaults_to_u_equal_one(capsys, triangle_doc):
    code, out, _ = _run(capsys, "local", triangle_doc)
    assert code == 0 and "u=1: 1 1" in out
    code, out, _ = _run(capsys, "local", triangle_doc, "--u", "-1")
    assert code == 0 and "u=-1: 0 0" in out


def test_alexander_from_cells_and_monodromy(capsys, tmp_path):
    doc = _write(tmp_path, "fig8.json", {"cells": {"1": [{"factor": "z^2 - 3z + 1", "k": 1}]}})
    code, out, _ = _run(capsys, "alexander", doc)
    assert code == 0 and out == "z^2 - 3z + 1\n"
    doc = _write(tmp_path, "fig8m.json", {"monodromy": {"1": [[2, 1], [1, 1]]}})
    code, out, _ = _run(capsys, "alexander", doc)
    assert code == 0 and out == "z^2 - 3z + 1\n"


def test_oracle_check_random(capsys):
    code, out, _ = _run(capsys, "oracle-check", "--random", "--seed", "1", "--count", "40")
    assert code == 0 and out.splitlines()[0] == "40/40 agree"


def test_oracle_check_on_document(capsys, reps_doc):
    code, out, _ = _run(capsys, "oracle-check", reps_doc)
    assert code == 0 and out.startswith("3/3 agree")


def test_exit_codes(capsys, tmp_path, triangle_doc):
    code, _, err = _run(capsys, "jordan", triangle_doc, "--theta", "2/5")
    assert code == 3 and "vertex angle" in err
    code, _, err = _run(capsys, "jordan", str(tmp_path / "missing.json"))
    assert code == 2 and "missing.json" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = _run(capsys, "jordan", str(bad))
    assert code == 2 and "line 1" in err
    code, _, err = _run(capsys, "rep", triangle_doc)
    assert code == 2 and "representations" in err


def test_diagnostics_name_the_field():
    with pytest.raises(InputError, match=r"map.angles\[1\]"):
        parse_document({"complex": {"vertices": 2, "simplices": [[0, 1]]}, "map": {"angles": ["1/10", "x"]}})
    with pytest.raises(InputError, match=r"complex.vertices"):
        parse_document({"complex": {"vertices": "3"}})
    with pytest.raises(InputError, match=r"representations.1.alpha\[0\]"):
        parse_document({"representations": {"1": {"dims": [2, 1], "alpha": [[[1]]], "beta": [[[1, 0]]]}}})
    with pytest.raises(InputError, match=r"map"):
        parse_document({"complex": {"vertices": 2, "simplices": [[0, 1]]}, "map": {"angles": [0, "1/2"]}})
    with pytest.raises(InputError, match=r"field"):
        parse_document({"field": "Fp:4"})


def test_output_is_deterministic_and_json_round_trips(capsys, tmp_path):
    doc = map_document(example_space(), QQ, "example")
    doc["query"] = {"theta": ["9/10"]}
    path = _write(tmp_path, "example.json", doc)
    for cmd in ("jordan", "novikov", "local"):
        _, first, _ = _run(capsys, cmd, path, "--format", "json")
        _, second, _ = _run(capsys, cmd, path, "--format", "json")
        assert first == second
        assert dumps(json.loads(first)) == first
        _, t1, _ = _run(capsys, cmd, path)
        _, t2, _ = _run(capsys, cmd, path)
        assert t1 == t2


def test_map_document_round_trip():
    for fx in map_fixtures():
        doc = map_document(fx.f, QQ, fx.name)
        parsed = parse_document(json.loads(dumps(doc)))
        assert parsed.map.angles == fx.f.angles
        assert parsed.complex.simplices == fx.f.complex.simplices


@pytest.mark.parametrize("name,cmd,expected", [
    ("triangle_circle.json", "jordan", "r=0: (1,1)"),
    ("example_reps.json", "rep", "r=1: (2,2)"),
    ("example_space.json", "jordan", "r=1: (2,2)"),
    ("torus.json", "novikov", "betaN = 0 0 0"),
    ("figure_eight.json", "alexander", "z^2 - 3z + 1"),
])
def test_bundled_inputs(capsys, name, cmd, expected):
    code, out, _ = _run(capsys, cmd, str(INPUTS / name))
    assert code == 0 and expected in out.splitlines()
