import json
import os
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from pentacycle import certificate as cert
from pentacycle.cli import main


def run(*args, env=None):
    e = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "pentacycle", *args], capture_output=True, text=True, env=e)


@pytest.mark.parametrize("args", [["genus", "--max", "6"], ["multiples", "--limit", "4"], ["frobenius", "--p", "5"],
                                  ["descent"], ["rational-points"], ["endomorphisms"]])
def test_verified_stages_exit_0(args, capsys):
    assert main(args) == 0
    assert "[verified]" in capsys.readouterr().out


def test_model_stage_reports_c_map_mismatch(capsys):
    assert main(["--json", "model"]) == 1
    doc = json.loads(capsys.readouterr().out)
    root = cert.Certificate.from_dict(doc["certificate"])
    assert root.failed_leaves() == ["model/c-map-table"]


@pytest.mark.parametrize("args", [["genus", "--max", "0"], ["all", "--only", "nope"], ["bogus"], []])
def test_usage_errors_exit_2(args):
    try:
        code = main(args)
    except SystemExit as e:
        code = e.code
    assert code == 2


def test_only_descent(capsys):
    assert main(["all", "--only", "descent", "--json"]) == 0
    assert '"rank": 1' in capsys.readouterr().out


def test_json_is_deterministic():
    a = run("--json", "all", "--bound", "5")
    b = run("--json", "all", "--bound", "5")
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    root = cert.Certificate.from_dict(doc["certificate"])
    assert cert.to_json(root) + "\n" == a.stdout
    assert root.failed_leaves() == ["pentacycle/model/c-map-table"]


def test_envelope_goes_to_stderr():
    r = run("--envelope", "genus", "--max", "3")
    assert r.returncode == 0
    env = json.loads(r.stderr.strip().splitlines()[-1])
    assert env["failed"] == [] and "elapsed_seconds" in env


def test_corrupted_tau5_fails_model(tmp_path):
    src = resources.files("pentacycle").joinpath("tables")
    for name in src.iterdir():
        shutil.copy(str(name), tmp_path / name.name)
    data = json.loads((tmp_path / "tau.json").read_text())
    data["tau5"]["rows"][0] = "32,28,40,10"
    (tmp_path / "tau.json").write_text(json.dumps(data))
    r = run("model", env={"PENTACYCLE_FIXTURES": str(tmp_path)})
    assert r.returncode == 1
    assert "[failed]" in r.stdout
