from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cuspidal.cli import main
from cuspidal.graph import read_adjacency

F2A = {"family": "free", "rank": 2, "generators": ["a", "b"], "subgroups": [{"name": "A", "generators": ["a"]}]}
Z2 = {"family": "free_abelian", "rank": 2, "generators": ["a", "b"]}


@pytest.fixture
def specs(tmp_path):
    (tmp_path / "f2a.json").write_text(json.dumps(F2A))
    (tmp_path / "z2.json").write_text(json.dumps(Z2))
    return tmp_path


def call(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delta_on_tree(specs, capsys):
    code, out, _ = call(capsys, "delta", "--group", specs / "f2a.json", "--radius", 3)
    assert code == 0
    rep = json.loads(out)
    assert rep["delta_four_point"] == 0 and rep["delta_slim"] == 0 and rep["vertices"] == 53


def test_profile_and_project(specs, capsys):
    code, out, _ = call(capsys, "profile", "--group", specs / "z2.json", "--radius", 8, "--gamma", "axis:a:4")
    assert code == 0
    assert json.loads(out)["rho_hat"][:5] == [0, 1, 2, 3, 4]
    code, out, _ = call(capsys, "project", "--group", specs / "z2.json", "--radius", 4,
                        "--gamma", "A^2,A,e,a,a^2", "--x", "ab^2")
    rep = json.loads(out)
    assert code == 0 and rep["dist_to_path"] == 2 and rep["diameter"] == 0


def test_export_graph_round_trip(specs, capsys, tmp_path):
    out = tmp_path / "g.adj"
    code, _, _ = call(capsys, "export-graph", "--group", specs / "f2a.json", "--radius", 2, "--depth", 2,
                      "--out", out, "--sidecar", tmp_path / "g.csv")
    assert code == 0
    g = read_adjacency(out)
    assert g.vertex_count > 17
    assert (tmp_path / "g.csv").read_text().count("\n") == g.vertex_count
    code, out, _ = call(capsys, "export-graph", "--graph", tmp_path / "g.adj", "--format", "dot")
    assert code == 0 and out.startswith("graph")


def test_distortion_and_vertical(specs, capsys):
    code, out, _ = call(capsys, "distortion", "--group", specs / "f2a.json", "--radius", 6, "--depth", 4,
                        "--h", "a", "--n-max", 6)
    assert code == 0 and json.loads(out)["distance"][:2] == [1, 2]
    code, out, _ = call(capsys, "vertical-audit", "--group", specs / "f2a.json", "--radius", 6, "--depth", 4,
                        "--cosets", "e,b")
    assert code == 0 and json.loads(out)["uniformity_gap"] == 0


def test_hull_and_stable_set(specs, capsys):
    code, out, _ = call(capsys, "hull", "--group", specs / "z2.json", "--radius", 6,
                        "--directions", "a^3,b^3", "--origin", "e")
    assert code == 0 and json.loads(out)["hull_size"] == 16
    code, out, _ = call(capsys, "stable-set", "--group", specs / "f2a.json", "--radius", 4, "--c", 0, "--r", 2)
    assert code == 0


def test_gauge_and_tests(specs, capsys):
    code, out, _ = call(capsys, "gauge", "--group", specs / "z2.json", "--radius", 4, "--gamma", "axis:a:2",
                        "--exhaustive")
    assert code == 0 and "entries" in json.loads(out)
    code, out, _ = call(capsys, "dl-test", "--group", specs / "z2.json", "--radius", 8, "--p", "e",
                        "--alpha", "axis:a:0:6", "--gamma", "axis:b:0:6", "--deltaN", 5, "--gauge", 1,
                        "--n", 6)
    rep = json.loads(out)
    assert code == 0 and rep["passed"] is False and rep["first_failure"] == 3


def test_exit_codes(specs, capsys, tmp_path):
    code, _, err = call(capsys, "delta", "--graph", tmp_path / "missing.adj")
    assert code == 2 and err
    code, _, _ = call(capsys, "delta", "--group", specs / "f2a.json", "--radius", 14)
    assert code == 3
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"name": "x", "radii": [3, 2]}))
    code, _, _ = call(capsys, "run", "--config", cfg)
    assert code == 2


def test_run_config_writes_report(specs, capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"name": "small", "group": "f2a.json", "radii": [4], "depths": [3],
                               "analyses": [{"kind": "distortion", "h": "a", "n_max": 4}]}))
    (tmp_path / "f2a.json").write_text(json.dumps(F2A))
    code, _, _ = call(capsys, "run", "--config", cfg, "--out", tmp_path / "out")
    assert code == 0
    rep = json.loads((tmp_path / "out" / "small.json").read_text())
    assert rep["status"] == "OK"
    cfg.write_text(json.dumps({"name": "fails", "group": "f2a.json", "radii": [12], "depths": [3],
                               "budgets": {"vertex_budget": 100}}))
    code, _, err = call(capsys, "run", "--config", cfg, "--out", tmp_path / "out")
    assert code == 3 and "build" in err
    assert json.loads((tmp_path / "out" / "fails.json").read_text())["status"] == "FAILED"


def test_console_script_recipe(tmp_path):
    res = subprocess.run([sys.executable, "-m", "cuspidal.cli", "recipe", "k-formula", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert json.loads((tmp_path / "k-formula.json").read_text())["status"] == "OK"
    res = subprocess.run([sys.executable, "-m", "cuspidal.cli", "recipe", "list"], capture_output=True, text=True)
    assert "paper-remark-zxz2" in res.stdout
