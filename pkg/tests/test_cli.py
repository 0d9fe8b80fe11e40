import io
import json
import subprocess
import sys

import pytest

from schemekit import __version__
from schemekit.cli import run


def invoke(argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def dodeca_json():
    out = io.StringIO()
    assert run(["build", "dodecahedron"], stdout=out) == 0
    return out.getvalue()


@pytest.fixture
def dodeca_file(tmp_path, dodeca_json):
    path = tmp_path / "dodeca.json"
    path.write_text(dodeca_json)
    return str(path)


def test_build_emits_scheme_and_labelings(dodeca_json):
    doc = json.loads(dodeca_json)
    assert doc["schema"] == 1 and doc["size"] == 20
    assert doc["labeling"]["kind"] == "P" and len(doc["dual_signatures"]) == 6


def test_check_q_from_stdin(dodeca_json, monkeypatch):
    code, out = invoke(["check-q", "--order", "grlex", "--labeling", "paper"], dodeca_json, monkeypatch)
    assert code == 0 and "PASS" in out


def test_search_p_on_cube_power_is_empty(monkeypatch):
    _, text = invoke(["build", "k2", "--power", "3"])
    code, out = invoke(["search-p", "--ell", "2", "--order", "grlex", "--json"], text, monkeypatch)
    assert code == 1
    assert json.loads(out)["result"]["results"] == []


def test_missing_file_is_usage_error():
    assert invoke(["check-p", "missing.json"])[0] == 2


def test_usage_errors():
    assert invoke([])[0] == 2
    assert invoke(["build", "widget"])[0] == 2
    assert invoke(["oracle-compare", "c5"])[0] == 2


def test_bad_json_and_bad_scheme(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert invoke(["analyze", str(bad)])[0] == 2
    bad.write_text(json.dumps({"size": 3, "relations": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}))
    assert invoke(["analyze", str(bad)])[0] == 2


def test_search_without_ell(dodeca_file):
    assert invoke(["search-p", dodeca_file])[0] == 2


def test_internal_inconsistency_exit_code(dodeca_file):
    assert invoke(["check-q", dodeca_file, "--tol", "1e-30"])[0] == 3


def test_labeling_file(tmp_path, dodeca_file):
    lab = {"schema": 1, "ell": 1, "kind": "P", "map": [[[i], i] for i in range(6)]}
    path = tmp_path / "lab.json"
    path.write_text(json.dumps(lab))
    assert invoke(["check-p", dodeca_file, "--labeling", str(path)])[0] == 0
    lab["map"] = [[[0], 0], [[1], 2], [[2], 1], [[3], 3], [[4], 4], [[5], 5]]
    path.write_text(json.dumps(lab))
    assert invoke(["check-p", dodeca_file, "--labeling", str(path)])[0] == 1
    path.write_text(json.dumps({"ell": 1}))
    assert invoke(["check-p", dodeca_file, "--labeling", str(path)])[0] == 2


def test_reports_are_deterministic(tmp_path, dodeca_file):
    path = tmp_path / "report.json"
    runs = []
    for _ in range(2):
        assert invoke(["check-q", dodeca_file, "--seed", "3", "--report", str(path)])[0] == 0
        runs.append(path.read_bytes())
    assert runs[0] == runs[1]
    rep = json.loads(runs[0])
    assert rep["version"] == __version__
    assert rep["config"]["seed"] == 3
    assert "residuals" in rep["result"]


def test_polys_and_ideal(dodeca_file):
    code, out = invoke(["polys", dodeca_file, "--side", "Q"])
    assert code == 0
    assert "v_02 = 5/6*x2^2 - 5/2" in out
    assert "v_11 = x1*x2 - 4/3*x2^2 + 4" in out
    code, out = invoke(["ideal", dodeca_file, "--side", "Q"])
    assert code == 0 and "staircase corners" in out


def test_groebner_verify_with_buchberger(monkeypatch):
    _, text = invoke(["build", "hamming:3,2"])
    code, out = invoke(["groebner-verify", "--buchberger"], text, monkeypatch)
    assert code == 0 and "Buchberger oracle agrees: True" in out


@pytest.mark.parametrize("cmd", [["analyze"], ["spectrum"], ["essential-variate", "--kind", "Q"], ["search-q", "--ell", "2"]])
def test_other_subcommands_succeed(cmd, dodeca_file):
    assert invoke(cmd + [dodeca_file])[0] == 0


def test_oracle_compare_subcommand():
    code, out = invoke(["oracle-compare", "attenuated:2,2,1,1"])
    assert code == 0 and "no differences" in out


def test_console_pipeline():
    build = subprocess.run([sys.executable, "-m", "schemekit.cli", "build", "dodecahedron"], capture_output=True, check=True)
    check = subprocess.run(
        [sys.executable, "-m", "schemekit.cli", "check-q", "--order", "grlex", "--labeling", "paper"],
        input=build.stdout,
        capture_output=True,
    )
    assert check.returncode == 0
