import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from hypermono.cli import DEFAULTS, main, resolve
from hypermono.tables import parse_csv
from hypermono.verify import MODULE_SUITES, REGISTRY


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _subprocess(argv, threads: str):
    env = dict(os.environ, HYPERMONO_THREADS=threads)
    return subprocess.run([sys.executable, "-m", "hypermono", *argv], capture_output=True, env=env, check=True).stdout


def test_epsilon_command(capsys):
    code, out, _ = _run(capsys, "epsilon", "--A", "18.8495559", "--k", "2")
    assert code == 0
    table = parse_csv(out)
    assert table["epsilon"][0] == pytest.approx(math.acos(2 - math.sqrt(3)), abs=1e-7)


def test_renorm_command(capsys):
    code, out, _ = _run(capsys, "renorm", "--C", "1e-6")
    assert code == 0
    assert parse_csv(out)["A_R"][0] == pytest.approx(-4 * math.pi, abs=1e-3)


def test_csv_lossless_digits_and_lf(capsys):
    _, out, _ = _run(capsys, "epsilon")
    assert "\r" not in out and out.endswith("\n")
    header, row = [ln for ln in out.split("\n") if ln][:2]
    assert header == "A,k,m,epsilon"
    for cell in row.split(","):
        assert float(repr(float(cell))) == float(cell)
    assert row.split(",")[0] == f"{6 * math.pi:.17g}"


def test_json_mirrors_csv(capsys):
    _, csv_out, _ = _run(capsys, "fig3", "--grid", "12.566370614359172:40:5")
    _, json_out, _ = _run(capsys, "fig3", "--grid", "12.566370614359172:40:5", "--format", "json")
    table = parse_csv(csv_out)
    doc = json.loads(json_out)
    assert list(doc["columns"]) == ["A", "epsilon"]
    for name, col in doc["columns"].items():
        assert np.array_equal(np.array(col), table[name])
    assert doc["meta"]["veronese"]["epsilon"] == pytest.approx(math.pi / 3)


def test_fig3_marker_comment(capsys):
    _, out, _ = _run(capsys, "fig3")
    first = out.split("\n")[0]
    assert first.startswith("# veronese,18.849555921538")
    assert len([ln for ln in out.split("\n") if ln and not ln.startswith("#")]) == 182


def test_fig1a_defaults_sorted(capsys):
    _, out, _ = _run(capsys, "fig1a")
    C = parse_csv(out)["C"]
    assert sorted(set(C.tolist())) == [0.25, 1.0, 4.0]
    assert np.all(np.diff(C) >= 0)


def test_fig1b_hits_target_angle(capsys):
    _, out, _ = _run(capsys, "fig1b")
    meta = json.loads(out.split("\n")[0][2:])
    assert meta["sweep_angle"] == pytest.approx(2 * math.pi / 3, abs=1e-6)
    assert 0 < meta["C"] < 1


def test_fig2_small_grid(capsys):
    code, out, _ = _run(capsys, "fig2", "--grid", "1:1000:3")
    assert code == 0
    t = parse_csv(out)
    assert t["C"].tolist() == pytest.approx([1.0, math.sqrt(1000.0), 1000.0])
    assert np.all(t["ratio"] >= 1.0)


def test_density_command(capsys):
    code, out, _ = _run(capsys, "density", "--surface", "mc", "--C", "1", "--weight", "natural",
                        "--grid", "1.5:20:8")
    assert code == 0
    meta = json.loads(out.split("\n")[0][2:])
    assert meta["verdict"] == "nondecreasing"


def test_density_unweighted_clifford_witness(capsys):
    code, out, _ = _run(capsys, "density", "--surface", "clifford", "--coord", "sphere", "--weight", "uniform",
                        "--h0", "0", "--grid", "0.02:1:50")
    assert code == 0
    meta = json.loads(out.split("\n")[0][2:])
    assert meta["verdict"] == "nonmonotone" and len(meta["witness"]) == 2


def test_every_command_has_defaults():
    for cmd, params in DEFAULTS.items():
        assert resolve([cmd]).params == params


def test_config_precedence(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"A": 20.0, "k": 3}))
    cfg = resolve(["epsilon", "--config", str(path), "--k", "1"])
    assert cfg.params == {"A": 20.0, "k": 1, "m": 1.0}


def test_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"A": 20.0, "bogus": 1}))
    code, _, err = _run(capsys, "epsilon", "--config", str(path))
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "config" and "bogus" in doc["message"]


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["epsilon", "--bogus", "1"],
    ["epsilon", "--k", "two"],
    ["fig2", "--grid", "1:2"],
    ["density", "--surface", "clifford", "--coord", "time"],
    ["epsilon", "--format", "xml"],
])
def test_config_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "config"


def test_domain_errors_exit_2(capsys):
    code, out, err = _run(capsys, "epsilon", "--A", "1.0")
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] == "NoSolutionError"


def test_output_file(tmp_path, capsys):
    path = tmp_path / "eps.csv"
    code, out, _ = _run(capsys, "epsilon", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_bytes().endswith(b"\n")


def test_verify_single_suite(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "models")
    assert code == 0
    assert out.strip().endswith("checks passed")
    assert "FAIL" not in out


def test_verify_json(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "weights", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and len(doc["results"]) == len(REGISTRY["weights"])


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setitem(REGISTRY, "models", [("always fails", lambda: (False, "forced"))])
    code, out, err = _run(capsys, "verify", "--suite", "models")
    assert code == 1 and "FAIL" in out
    assert json.loads(err)["error"] == "verification"


def test_registry_non_empty_per_module():
    for suite in MODULE_SUITES + ("acceptance",):
        assert REGISTRY[suite], suite


@pytest.mark.parametrize("argv", [
    ["fig2", "--grid", "1e-2:1e3:6"],
    ["density", "--surface", "mc", "--C", "1", "--grid", "1.5:20:6"],
])
def test_output_identical_across_thread_counts(argv):
    one = _subprocess(argv, "1")
    four = _subprocess(argv, "4")
    assert one == four
    assert one == _subprocess(argv, "1")
