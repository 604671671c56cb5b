import json
import os
import subprocess
import sys

import pytest

from lieentropy.catalog import builtin_catalog, get_entry
from lieentropy.errors import InputError
from lieentropy.formats import build_group, parse_input, report_to_dict
from lieentropy.groups import analyze, validate_endomorphism


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "lieentropy.cli", *args],
        capture_output=True, text=True, cwd=cwd,
        env=dict(os.environ, PYTHONPATH=os.pathsep.join(sys.path)),
    )


# --- parsing ------------------------------------------------------------------

def test_parse_catalog_document():
    entry = get_entry("cstar-squaring")
    document = parse_input(json.dumps(entry.document))
    assert document.dim == 2
    assert len(document.lattice) == 1


def test_parse_rejects_zero_denominator():
    doc = {"algebra": {"dim": 1, "brackets": [[0, 0, 0, "1/0"]]},
           "lattice": [], "endomorphism": [["1"]]}
    with pytest.raises(InputError, match="denominator zero"):
        parse_input(json.dumps(doc))


def test_parse_rejects_non_square_endomorphism():
    doc = {"algebra": {"dim": 2, "brackets": []},
           "lattice": [], "endomorphism": [["1", "0"]]}
    with pytest.raises(InputError, match="2x2"):
        parse_input(json.dumps(doc))


def test_parse_rejects_unknown_fields_and_bad_json():
    doc = {"algebra": {"dim": 1, "brackets": []}, "lattice": [],
           "endomorphism": [["1"]], "extra": True}
    with pytest.raises(InputError, match="unknown fields"):
        parse_input(json.dumps(doc))
    with pytest.raises(InputError, match="line 1"):
        parse_input("{not json")


def test_parse_error_positions_name_fields():
    doc = {"algebra": {"dim": 2, "brackets": [[0, 5, 0, "1"]]},
           "lattice": [], "endomorphism": [["1", "0"], ["0", "1"]]}
    with pytest.raises(InputError, match=r"algebra.brackets\[0\]"):
        parse_input(json.dumps(doc))


def test_parse_rejects_float_rationals():
    doc = {"algebra": {"dim": 1, "brackets": []}, "lattice": [],
           "endomorphism": [[1.5]]}
    with pytest.raises(InputError):
        parse_input(json.dumps(doc))


# --- report round trip ------------------------------------------------------------

def test_report_round_trip():
    entry = get_entry("heisenberg-central-circle")
    document = parse_input(json.dumps(entry.document))
    group, derivative = build_group(document)
    endo = validate_endomorphism(group, derivative)
    first = report_to_dict(analyze(group, endo, 1e-9), document)
    embedded = parse_input(json.dumps(first["input"]))
    group2, derivative2 = build_group(embedded)
    endo2 = validate_endomorphism(group2, derivative2)
    second = report_to_dict(analyze(group2, endo2, 1e-9), embedded)
    assert first == second


# --- subcommands ------------------------------------------------------------------

def test_cli_validate_and_entropy(tmp_path):
    entry = get_entry("torus2-squaring")
    path = tmp_path / "torus2.json"
    path.write_text(json.dumps(entry.document))
    result = run_cli("validate", "--input", str(path))
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["presentation_valid"] and payload["endomorphism_valid"]

    result = run_cli("entropy", "--input", str(path))
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert abs(report["entropy"]["value"] - 1.3862943611198906) <= 1e-9
    assert report["entropy"]["certificate"] == [4, -4, 1]
    assert report["input"] == entry.document


def test_cli_analyze_catalog_entry():
    result = run_cli("analyze", "--catalog", "euclidean-e2")
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["entropy"]["value"] == 0.0
    assert report["entropy"]["exact_zero"] is True
    assert report["li_yorke"]["verdict"] == "some_power_li_yorke_free"
    tags = [link["result"] for link in report["li_yorke"]["chain"]]
    assert "trivial-central-torus-excludes-li-yorke-pairs" in tags
    assert report["toral_order"]["order"] == 1


def test_cli_invalid_presentation_exit_code():
    doc = {"algebra": {"dim": 3, "basis": ["X", "Y", "Z"],
                       "brackets": [[0, 1, 2, "1"]]},
           "lattice": [["1", "0", "0"]],
           "endomorphism": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    result = run_cli("validate", "--input", "/dev/stdin")
    assert result.returncode == 1  # no stdin content: read error counts as input error

    import tempfile

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
        path = fh.name
    try:
        result = run_cli("validate", "--input", path)
        assert result.returncode == 1
        payload = json.loads(result.stdout)
        assert not payload["presentation_valid"]
        result = run_cli("entropy", "--input", path)
        assert result.returncode == 1
    finally:
        os.unlink(path)


def test_cli_pipeline_abort_exit_code(tmp_path):
    # solvable algebra whose nilradical post-verification fails: the
    # toral-order stage aborts with exit code 2
    doc = {"algebra": {"dim": 3, "basis": ["H", "X", "Y"],
                       "brackets": [[0, 1, 1, "1"], [0, 1, 2, "1"],
                                    [0, 2, 1, "-1"], [0, 2, 2, "1"]]},
           "lattice": [],
           "endomorphism": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    path = tmp_path / "trap.json"
    path.write_text(json.dumps(doc))
    result = run_cli("analyze", "--input", str(path))
    assert result.returncode == 2
    assert "abort" in result.stderr


def test_cli_estimate_csv(tmp_path):
    out = tmp_path / "est.csv"
    result = run_cli("estimate", "--catalog", "cstar-squaring",
                     "--n-max", "6", "--epsilon", "0.02",
                     "--resolution", "4096", "--format", "csv",
                     "--output", str(out))
    assert result.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,spanning_count,separated_count"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[0] == "1" and int(first[1]) >= int(first[2])


def test_cli_estimate_json():
    result = run_cli("estimate", "--catalog", "cstar-squaring",
                     "--n-max", "6", "--epsilon", "0.02", "--resolution", "4096")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["matrix"] == [[2]]
    assert len(payload["n_values"]) == 6
    assert "slope" in payload and "exact_entropy" in payload


def test_cli_estimate_auto_resolution():
    result = run_cli("estimate", "--catalog", "cstar-squaring",
                     "--n-max", "6", "--epsilon", "0.05")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["resolution"] > 4 / 0.05


def test_cli_estimate_trivial_torus_rejected():
    result = run_cli("estimate", "--catalog", "plane-doubling")
    assert result.returncode == 1
    assert "trivial" in result.stderr


def test_cli_catalog_list_and_run_all():
    result = run_cli("catalog")
    assert result.returncode == 0
    names = [row["name"] for row in json.loads(result.stdout)]
    assert set(e.name for e in builtin_catalog()) == set(names)

    result = run_cli("catalog", "--run-all")
    assert result.returncode == 0
    assert f"{len(names)}/{len(names)} catalog entries passed" in result.stdout


def test_cli_usage_errors_exit_one():
    assert run_cli("entropy").returncode == 1
    assert run_cli("no-such-command").returncode == 1
    assert run_cli("analyze", "--catalog", "does-not-exist").returncode == 1
