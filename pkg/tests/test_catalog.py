from __future__ import annotations

import json

import pytest

from schemespinlab import catalog
from schemespinlab.catalog import CatalogEntry
from schemespinlab.errors import UnknownEntry
from schemespinlab.exactalg import Mat

EXPECTED_IDS = ["W1", "W2", "W3", "klein4", "leonard4", "potts3", "potts4", "scheme16", "z3", "z4"]


def test_listing():
    assert catalog.list_entries() == EXPECTED_IDS


@pytest.mark.parametrize("entry_id", EXPECTED_IDS)
def test_golden_values_reproduce(entry_id):
    report = catalog.run_golden(entry_id)
    failing = [c.name for c in report.checks if not c.passed]
    assert report.passed, failing
    assert report.to_dict()["passed"] is True


@pytest.mark.parametrize("entry_id", EXPECTED_IDS)
def test_entries_round_trip(entry_id):
    entry = catalog.get(entry_id)
    assert CatalogEntry.from_dict(entry.to_dict()) == entry


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog.get("nope")


def test_expected_values_need_a_known_source():
    with pytest.raises(ValueError):
        CatalogEntry("x", "matrix", "", {}, {"type_ii": {"value": True, "source": "guess"}})
    with pytest.raises(ValueError):
        CatalogEntry("x", "table", "", {}, {})


def test_directory_override(tmp_path, monkeypatch):
    entry = catalog.get("W1")
    path = catalog.save(entry, tmp_path)
    assert json.loads(path.read_text())["id"] == "W1"
    monkeypatch.setenv(catalog.ENV_VAR, str(tmp_path))
    assert catalog.list_entries() == ["W1"]
    assert catalog.run_golden("W1").passed


def test_broken_expectation_is_reported(tmp_path, monkeypatch):
    data = catalog.get("W2").to_dict()
    data["expected"]["nomura_dimension"]["value"] = 2
    (tmp_path / "W2.json").write_text(json.dumps(data))
    for other in ("z3",):
        catalog.save(catalog.get(other), tmp_path)
    monkeypatch.setenv(catalog.ENV_VAR, str(tmp_path))
    report = catalog.run_golden("W2")
    assert not report.passed
    assert [c.name for c in report.checks if not c.passed] == ["nomura_dimension"]


def test_build_kinds():
    assert isinstance(catalog.build(catalog.get("W3")), Mat)
    assert catalog.build(catalog.get("scheme16")).n == 16
    A, B = catalog.build(catalog.get("leonard4"))
    assert A.n == B.n == 4
    assert catalog.build(catalog.get("potts4")).scheme.n == 4


def test_compact_json_keeps_scalar_rows_inline():
    text = catalog.compact_json({"a": [[1, 2], [3, 4]], "b": {"c": [1, 2]}})
    assert "[[1, 2], [3, 4]]" in text
    assert json.loads(text) == {"a": [[1, 2], [3, 4]], "b": {"c": [1, 2]}}
