from __future__ import annotations

import csv
import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.errors import InputError
from cuspidal.report import (ANALYSIS_KINDS, ExperimentConfig, brute_force_horoball_edges, dumps, recipe,
                             recipes, report_schema, run, strip_timings, validate_report)
from cuspidal.horoball import build_horoball

from conftest import path_graph

F2A = {"family": "free", "rank": 2, "generators": ["a", "b"], "subgroups": [{"name": "A", "generators": ["a"]}]}


def increasing(max_size=4):
    return st.lists(st.integers(0, 40), max_size=max_size, unique=True).map(sorted)


@st.composite
def configs(draw):
    radii = draw(increasing())
    kinds = draw(st.lists(st.sampled_from(["k-formula", "horoball-exactness", "delta"]), max_size=3))
    analyses = [{"kind": k} for k in kinds]
    return ExperimentConfig(name=draw(st.text("abcxyz-", min_size=1, max_size=8)),
                            group=F2A if radii or draw(st.booleans()) else None, radii=radii,
                            depths=draw(increasing()), analyses=analyses,
                            budgets=draw(st.dictionaries(st.sampled_from(["vertex_budget", "work"]),
                                                         st.integers(1, 10**7))),
                            seed=draw(st.one_of(st.none(), st.integers(0, 2**31))),
                            description=draw(st.text(max_size=20)))


@settings(max_examples=60, deadline=None)
@given(configs())
def test_config_round_trip(cfg):
    assert ExperimentConfig.parse(cfg.emit()) == cfg
    assert ExperimentConfig.parse(cfg.emit()).emit() == cfg.emit()


@pytest.mark.parametrize("bad", [
    {"name": "x", "group": F2A, "radii": [3, 3]},
    {"name": "x", "group": F2A, "radii": [4, 2]},
    {"name": "x", "depths": [-1]},
    {"name": "x", "radii": [2]},
    {"name": "x", "analyses": [{"kind": "nope"}]},
    {"name": "x", "analyses": [{"kind": "stability-audit"}]},
    {"name": "x", "group": F2A, "radii": [4], "analyses": [{"kind": "delta", "mode": "sampled"}]},
    {"name": "x", "colour": "red"},
    {"radii": []},
])
def test_config_validation(bad):
    with pytest.raises(InputError):
        ExperimentConfig.from_dict(bad)


def test_parse_rejects_non_objects():
    with pytest.raises(InputError):
        ExperimentConfig.parse("[1, 2]")
    with pytest.raises(InputError):
        ExperimentConfig.parse("{")


def test_empty_analysis_list_reports_builds_only():
    rep = run(ExperimentConfig(name="empty", group=F2A, radii=[4], depths=[3]))
    validate_report(rep)
    assert rep["status"] == "OK" and rep["analyses"] == []
    kinds = [b["kind"] for b in rep["builds"]]
    assert kinds == ["ball", "cusped"]
    assert rep["builds"][1]["certified_radius"] >= 0


def test_determinism_and_outputs(tmp_path):
    cfg = ExperimentConfig(name="det", group=F2A, radii=[4, 5], depths=[3], seed=7,
                           analyses=[{"kind": "delta", "mode": "sampled", "budget": 2000},
                                     {"kind": "distortion", "h": "a", "n_max": 4}])
    a = run(cfg, out_dir=tmp_path / "one")
    b = run(cfg, out_dir=tmp_path / "two")
    validate_report(a)
    assert dumps(strip_timings(a)) == dumps(strip_timings(b))
    assert (tmp_path / "one" / "det.json").exists()
    for rec in a["analyses"]:
        assert rec["mode"] in ("exhaustive", "sampled") and rec["region"]
    assert a["analyses"][0]["seed"] == 7
    for fn in a["csv_files"]:
        rows = list(csv.reader(open(tmp_path / "one" / fn)))
        assert len(rows) >= 2


def test_failed_stage_is_reported():
    cfg = ExperimentConfig(name="boom", group=F2A, radii=[12], depths=[4], budgets={"vertex_budget": 1000})
    rep = run(cfg)
    validate_report(rep)
    assert rep["status"] == "FAILED"
    assert rep["failed_stage"]["stage"].startswith("build") and rep["failed_stage"]["exit_code"] == 3
    cfg = ExperimentConfig(name="nobuild", analyses=[{"kind": "profile", "axis": "a"}])
    rep = run(cfg)
    assert rep["status"] == "FAILED" and rep["failed_stage"]["stage"] == "analyze:profile"
    assert rep["failed_stage"]["exit_code"] == 2


def test_schema_rejects_missing_fields():
    rep = run(ExperimentConfig(name="k", analyses=[{"kind": "k-formula", "cases": [
        {"profile": "zero", "L": 1, "A": 0}]}]))
    validate_report(rep)
    broken = dict(rep)
    del broken["config"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(broken, report_schema())


def test_recipes_enumerated():
    names = {r.name for r in recipes()}
    assert {"paper-remark-zxz2", "thm41-distortion", "intro-z2-empty-boundary"} <= names
    assert all(r.description for r in recipes())
    for r in recipes():
        r.build_config()
    with pytest.raises(InputError):
        recipe("missing")


def test_every_analysis_kind_has_a_recipe_or_test():
    used = {a["kind"] for r in recipes() for a in r.config.get("analyses", [])}
    assert used <= set(ANALYSIS_KINDS)


def test_brute_force_edges_match_builder():
    base = path_graph(9)
    built = {tuple(e) for e in build_horoball(base, 4).graph.edges().tolist()}
    assert built == brute_force_horoball_edges(base, 4)


def test_group_path_resolves_relative(tmp_path):
    (tmp_path / "g.json").write_text(json.dumps(F2A))
    (tmp_path / "c.json").write_text(json.dumps({"name": "rel", "group": "g.json", "radii": [2]}))
    rep = run(ExperimentConfig.load(tmp_path / "c.json"))
    assert rep["status"] == "OK" and rep["builds"][0]["vertices"] == 17
    with pytest.raises(InputError):
        ExperimentConfig.load(tmp_path / "absent.json")


def test_builds_record_generating_set():
    G = {"family": "free", "rank": 2, "generators": ["a", "b"],
         "subgroups": [{"name": "H", "generators": ["ab"]}]}
    rep = run(ExperimentConfig(name="gens", group=G, radii=[3], depths=[2]))
    assert [b["generating_set"] for b in rep["builds"]] == [["a", "b", "ab"]] * 2
    rep = run(ExperimentConfig(name="plain", group=F2A, radii=[2]))
    assert rep["builds"][0]["generating_set"] == ["a", "b"]
