from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from schemespinlab.cli import UsageError, main, parse_scalar
from schemespinlab.exactalg import Cyclo, cyclo_sqrt_int

SCHEMA = json.loads(resources.files("schemespinlab").joinpath("report_schema.json").read_text())


def run(capsys, *argv):
    status = main(list(argv))
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, SCHEMA)
    return status, report


def test_parse_scalar():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("sqrt(5)") == cyclo_sqrt_int(5)
    assert parse_scalar("zeta(5, 2)") == Cyclo.root(5, 2)
    assert parse_scalar("phi") == (1 + cyclo_sqrt_int(5)) / 2
    assert parse_scalar("2*i + 1") == 1 + 2 * Cyclo.root(4)
    assert parse_scalar("0.25") == 0.25
    with pytest.raises(UsageError):
        parse_scalar("__import__('os')")


@pytest.mark.parametrize("argv, status", [
    (["catalog", "list"], 0),
    (["catalog", "golden", "scheme16"], 0),
    (["spin", "typeii", "--in", "catalog:W2"], 0),
    (["tl", "square", "--in", "catalog:W1"], 0),
    (["tl", "relations", "--n", "4", "--delta", "phi"], 0),
    (["tl", "braid", "--n", "3", "--A", "zeta(20)"], 0),
    (["tl", "index", "--n", "5"], 0),
    (["ifs", "sl2", "--d", "6"], 0),
    (["leonard", "check", "--in", "catalog:leonard4"], 0),
    (["leonard", "subst", "--d", "4", "--omega", "1/3"], 0),
    (["leonard", "qdata", "--k", "3", "--d", "3", "--partner", "parameter_array"], 0),
    (["leonard", "qdata", "--k", "2", "--d", "4"], 1),
    (["spin", "potts", "--n", "3"], 0),
    (["scheme", "hamming", "--d", "3", "--q", "2"], 0),
    (["scheme", "group", "--cyclic", "4"], 0),
    (["bogus"], 2),
    (["spin", "typeii"], 2),
    (["catalog", "show", "missing"], 2),
    (["tl", "index", "--n", "5", "--tol", "-1"], 2),
])
def test_exit_codes(capsys, argv, status):
    assert run(capsys, *argv)[0] == status


def test_failed_check_exits_one(capsys, tmp_path):
    path = tmp_path / "j.json"
    path.write_text(json.dumps([[1, 1, 1], [1, 1, 1], [1, 1, 1]]))
    status, report = run(capsys, "spin", "typeii", "--in", str(path))
    assert status == 1 and report["results"]["is_type_ii"] is False


def test_malformed_json_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('[[1, 2],\n [3, 4')
    status, report = run(capsys, "spin", "typeii", "--in", str(path))
    assert status == 2
    assert report["results"]["line"] == 2


def test_exact_mode_refuses_floats(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps([[1.0, 1.0], [1.0, -1.0]]))
    status, report = run(capsys, "spin", "typeii", "--in", str(path), "--mode", "exact")
    assert status == 2 and "floating-point" in report["results"]["error"]
    status, report = run(capsys, "spin", "typeii", "--in", str(path))
    assert status == 0 and report["mode"] == "approx"


def test_knot_invariance(capsys, tmp_path):
    graph = tmp_path / "g.json"
    graph.write_text(json.dumps({"vertices": 2, "edges": [[0, 1, "+"], [0, 1, "-"]]}))
    status, report = run(capsys, "knot", "invariance", "--in", str(graph), "--weights", "catalog:W2",
                         "--moves", "0-1")
    assert status == 0


def test_out_file_and_determinism(capsys, tmp_path):
    outs = []
    for k in range(3):
        path = tmp_path / f"r{k}.json"
        assert main(["catalog", "golden", "potts3", "--seed", "5", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert capsys.readouterr().out == ""
    assert outs[0] == outs[1] == outs[2]
    assert json.loads(outs[0])["provenance"]["seed"] == 5
