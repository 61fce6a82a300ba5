"""Scenario validation, the catalog, the runner, and the CLI surface."""

import copy
import json
import math

import pytest

from measurelab.cli import main
from measurelab.errors import ScenarioError
from measurelab.reporting import format_error, rows_to_csv, rows_to_json
from measurelab.runner import CheckRow, Overrides, run_scenario
from measurelab.scenarios import catalog, catalog_names, find_scenario, validate

EXPECTED_NAMES = [
    "dirac-escape",
    "dirac-collapse",
    "dominated-density",
    "vitali-linear",
    "nonuniform-spike",
    "interval-vitali",
    "discrete-pettis",
]


def small_escape_spec(n_max: int = 16) -> dict:
    spec = find_scenario("dirac-escape").to_json()
    spec["n_max"] = n_max
    return copy.deepcopy(spec)


def test_catalog_names_and_order():
    assert catalog_names() == EXPECTED_NAMES
    assert len(catalog()) == 7


def test_find_scenario_unknown():
    with pytest.raises(ScenarioError):
        find_scenario("no-such-thing")


def test_describe_round_trip_for_every_catalog_entry():
    for sc in catalog():
        doc = json.loads(json.dumps(sc.to_json()))
        again = validate(doc)
        assert again.name == sc.name
        assert [c.name for c in again.checks] == [c.name for c in sc.checks]
        assert [c.expect for c in again.checks] == [c.expect for c in sc.checks]
        assert again.tol == sc.tol and again.n_max == sc.n_max


def test_validate_reports_json_paths():
    spec = small_escape_spec()
    spec.pop("schema_version")
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert "schema_version" in str(err.value)

    spec = small_escape_spec()
    spec["checks"][0]["check"] = "bogus"
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert err.value.path == "checks[0].check"

    spec = small_escape_spec()
    spec["checks"][0]["expect"] = "MAYBE"
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert err.value.path == "checks[0].expect"

    spec = small_escape_spec()
    spec["measures"]["sequence"] = {"kind": "nope"}
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert err.value.path == "measures.sequence"

    spec = small_escape_spec()
    spec["n_max"] = 2
    with pytest.raises(ScenarioError):
        validate(spec)

    spec = small_escape_spec()
    spec["tol"] = 0
    with pytest.raises(ScenarioError):
        validate(spec)


def test_validate_requires_artifacts_for_checks():
    spec = small_escape_spec()
    spec["checks"].append({"check": "ui", "expect": "REFUTED"})
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert "functions" in str(err.value)

    spec = small_escape_spec()
    spec["checks"].append({"check": "pettis_plain"})
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert "bodies" in str(err.value)

    spec = small_escape_spec()
    spec["functions"] = {
        "sequence": {"kind": "constant", "value": 1},
        "limit": {"kind": "constant", "value": 1},
    }
    spec["checks"].append({"check": "conv_in_measure", "params": {}})
    with pytest.raises(ScenarioError) as err:
        validate(spec)
    assert err.value.path.endswith("params.eps")


def test_validate_checks_ring_and_grids():
    spec = small_escape_spec()
    spec["ring"] = {"resolution": -1}
    with pytest.raises(ScenarioError):
        validate(spec)

    spec = small_escape_spec()
    spec["ring"] = {"resolution": 2, "extra_boxes": [[[0.0], [200.0]]]}
    validate(spec)  # boxes are clipped to the space, so this is fine

    spec = small_escape_spec()
    spec["eps"] = [0.5, -1]
    with pytest.raises(ScenarioError):
        validate(spec)

    spec = small_escape_spec()
    spec["alphas"] = []
    with pytest.raises(ScenarioError):
        validate(spec)


def test_run_scenario_rows_sorted_and_matching():
    rows = run_scenario(validate(small_escape_spec()))
    assert [r.check for r in rows] == sorted(r.check for r in rows)
    assert all(r.ok for r in rows)
    assert all(r.n_max == 16 for r in rows)
    by_check = {r.check: r for r in rows}
    assert by_check["mass"].status == "REFUTED"
    assert by_check["weak"].witness == "g=1"


def test_overrides_change_run_parameters():
    rows = run_scenario(find_scenario("dirac-escape"),
                        Overrides(n_max=12, tol=1e-3))
    assert all(r.n_max == 12 for r in rows)
    assert all(r.ok for r in rows)


def test_format_error_and_reporting_helpers():
    assert format_error(float("nan")) == "nan"
    assert format_error(float("inf")) == "inf"
    assert format_error(-float("inf")) == "-inf"
    assert format_error(0.015625) == "0.015625"
    row = CheckRow(scenario="s", check="c", status="REFUTED",
                   witness="[0,0.015625)", final_error=1.0, n_max=8,
                   expect="REFUTED")
    text = rows_to_csv([row])
    lines = text.splitlines()
    assert lines[0] == "scenario,check,status,witness,final_error,n_max"
    assert '"[0,0.015625)"' in lines[1]
    parsed = json.loads(rows_to_json([row]))
    assert parsed[0]["witness"] == "[0,0.015625)"
    assert parsed[0]["final_error"] == "1"


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in EXPECTED_NAMES:
        assert name in out
    assert len(out.strip().splitlines()) == 7


def test_cli_describe_round_trip(capsys):
    assert main(["describe", "dirac-escape"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert validate(doc).name == "dirac-escape"


def test_cli_describe_unknown(capsys):
    assert main(["describe", "nope"]) == 2
    assert "nope" in capsys.readouterr().err


def test_cli_run_csv_and_byte_stability(capsys):
    assert main(["run", "dirac-escape", "--n-max", "16"]) == 0
    first = capsys.readouterr().out
    assert main(["run", "dirac-escape", "--n-max", "16"]) == 0
    second = capsys.readouterr().out
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "scenario,check,status,witness,final_error,n_max"
    assert len(lines) == 7
    assert all(line.startswith("dirac-escape,") for line in lines[1:])


def test_cli_run_json_format(capsys):
    assert main(["run", "dirac-escape", "--n-max", "16",
                 "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["check"] for r in rows} == {
        "mass", "vague", "weak", "setwise", "uac_measures", "weak_from_uac"}
    assert all(r["n_max"] == 16 for r in rows)


def test_cli_run_unknown_scenario(capsys):
    assert main(["run", "missing-one"]) == 2
    assert "missing-one" in capsys.readouterr().err


def test_cli_run_out_file_and_plots(tmp_path, capsys):
    out = tmp_path / "report.csv"
    assert main(["run", "dirac-escape", "--n-max", "16",
                 "--out", str(out), "--plots"]) == 0
    err = capsys.readouterr().err
    assert out.exists()
    png = tmp_path / "dirac-escape.png"
    assert png.exists()
    assert png.stat().st_size > 1000
    assert str(png) in err


def test_cli_check_file_ok(tmp_path, capsys):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(small_escape_spec()))
    assert main(["check-file", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("scenario,check,")


def test_cli_check_file_mismatch_exits_one(tmp_path, capsys):
    spec = small_escape_spec()
    for check in spec["checks"]:
        if check["check"] == "mass":
            check["expect"] = "SUPPORTED"  # it is genuinely refuted
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(spec))
    assert main(["check-file", str(path)]) == 1


def test_cli_check_file_parse_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["check-file", str(path)]) == 2
    err = capsys.readouterr().err
    assert "broken.json" in err and ":1:" in err


def test_cli_check_file_validation_error(tmp_path, capsys):
    spec = small_escape_spec()
    spec["checks"][0]["check"] = "bogus"
    path = tmp_path / "invalid.json"
    path.write_text(json.dumps(spec))
    assert main(["check-file", str(path)]) == 2
    err = capsys.readouterr().err
    assert "checks[0].check" in err


def test_cli_check_file_missing(capsys):
    assert main(["check-file", "/nonexistent/file.json"]) == 2
    assert "file.json" in capsys.readouterr().err
