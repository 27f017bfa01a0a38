"""Experiment configs, the build -> certify -> analyze driver, recipes and deterministic reports."""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .cusped import build_cusped_ball, certify
from .errors import CuspidalError, InputError
from .graph import GeodesicPath, UnitGraph, is_geodesic
from .groups import cayley_ball, cayley_region, load_group_spec, power_tube
from .horoball import build_horoball
from .hyperbolicity import four_point_delta, plateau_audit, slim_triangle_delta
from .morse import (AuditSummary, ContractionProfile, contraction_profile, k_of, power_path_distortion,
                    slim_audit, small_instances, stability_audit, sublinearity_trend,
                    vertical_ray_contraction_audit, weak_hull)
from .morse.audits import slim_targets
from .morse.contraction import ceil_sqrt_profile

SCHEMA_VERSION = "1.0"
TIMING_KEY = "timings"

#: analyses that draw random samples and therefore need a seed
SEEDED_KINDS = {"tree-baseline", "stability-audit", "slim-audit"}
ANALYSIS_KINDS = ("horoball-exactness", "delta", "distortion", "vertical-audit", "profile", "tree-baseline",
                  "hull-sequence", "stability-audit", "slim-audit", "k-formula")


# -- configuration -------------------------------------------------------------

@dataclass
class ExperimentConfig:
    """One batch experiment.

    ``group`` is a group-spec dict or a path to one. ``build`` selects the base
    region: ``{"kind": "ball"}`` (default) or ``{"kind": "tube", "h": ..., "n": ...}``,
    where each entry of ``radii`` is then the tube thickness.
    """

    name: str
    group: dict | str | None = None
    radii: list[int] = field(default_factory=list)
    depths: list[int] = field(default_factory=list)
    analyses: list[dict] = field(default_factory=list)
    budgets: dict = field(default_factory=dict)
    seed: int | None = None
    outputs: dict = field(default_factory=dict)
    build: dict = field(default_factory=dict)
    description: str = ""

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for key in ("radii", "depths"):
            vals = getattr(self, key)
            if any(not isinstance(v, int) or v < 0 for v in vals):
                raise InputError(f"{key} must be non-negative integers")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise InputError(f"{key} must be strictly increasing")
        if self.radii and self.group is None:
            raise InputError("radii given without a group")
        for a in self.analyses:
            if a.get("kind") not in ANALYSIS_KINDS:
                raise InputError(f"unknown analysis kind {a.get('kind')!r}")
        if self.seed is None and any(self._sampled(a) for a in self.analyses):
            raise InputError("a seed is required when a sampled analysis is selected")

    @staticmethod
    def _sampled(a: dict) -> bool:
        return a["kind"] in SEEDED_KINDS or a.get("mode") == "sampled"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise InputError(f"unknown config keys: {sorted(extra)}")
        if "name" not in d:
            raise InputError("config needs a name")
        return cls(**d)

    def emit(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ExperimentConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"config is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise InputError("config must be a JSON object")
        return cls.from_dict(d)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        p = Path(path)
        if not p.exists():
            raise InputError(f"config file {p} does not exist")
        cfg = cls.parse(p.read_text())
        if isinstance(cfg.group, str) and not Path(cfg.group).is_absolute():
            cfg.group = str(p.parent / cfg.group)
        return cfg


# -- JSON helpers ----------------------------------------------------------------

def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else str(v)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != TIMING_KEY}


def report_schema() -> dict:
    return json.loads(resources.files("cuspidal").joinpath("schema/report.schema.json").read_text())


def validate_report(report: dict) -> None:
    import jsonschema

    jsonschema.validate(jsonable(report), report_schema())


# -- analyses --------------------------------------------------------------------

def brute_force_horoball_edges(base: UnitGraph, depth: int) -> set[tuple[int, int]]:
    """Literal pairwise application of the horoball edge rule (slow, for checking)."""
    nb = base.vertex_count
    D = base.distance_matrix()
    out = set()
    for n in range(depth + 1):
        for x in range(nb):
            for y in range(x + 1, nb):
                d = int(D[x, y])
                if (n == 0 and d == 1) or (n >= 1 and 0 < d <= 2 ** n):
                    out.add((n * nb + x, n * nb + y))
            if n < depth:
                out.add((n * nb + x, (n + 1) * nb + x))
    return out


def _path_graph(n: int) -> UnitGraph:
    return UnitGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _a_horoball_exactness(p, ctx):
    base = _path_graph(int(p.get("base_size", 33)))
    depth = int(p.get("depth", 6))
    fast = {tuple(map(int, e)) for e in build_horoball(base, depth).graph.edges()}
    slow = brute_force_horoball_edges(base, depth)
    return {"mode": "exhaustive", "region": f"path graph on {base.vertex_count} vertices, depth {depth}",
            "results": {"edges": len(fast), "oracle_edges": len(slow),
                        "missing": len(slow - fast), "extra": len(fast - slow),
                        "discrepancies": len(slow ^ fast)}}


def _a_delta(p, ctx):
    mode = p.get("mode", "exhaustive")
    budget = int(p.get("budget", 1_000_000))
    seed = ctx.seed or 0
    series, rows = [], []
    for b in ctx.targets(p):
        g = b["graph"]
        rep = four_point_delta(g, mode, budget, seed)
        row = {"build": b["label"], "vertices": g.vertex_count, "four_point": rep.to_dict()}
        if p.get("slim", False):
            row["slim"] = slim_triangle_delta(g, mode, int(p.get("slim_budget", 20000)), seed).to_dict()
        rows.append(row)
        series.append((g.vertex_count, rep.delta_four_point))
    res = {"per_build": rows}
    if len(series) >= 3:
        res["plateau"] = plateau_audit(series).to_dict()
    ctx.csv("delta", ["vertices", "delta_four_point"], series)
    return {"mode": mode, "region": "each selected build", "results": res}


def _a_distortion(p, ctx):
    rows = []
    lo, hi = p.get("check_range", [None, None])
    for b in ctx.targets(p, default="cusped"):
        res = power_path_distortion(b["cb"], p["h"], int(p["n_max"]))
        sel = [r for n, r in zip(res["n"], res["ratio"]) if r is not None
               and (lo is None or n >= lo) and (hi is None or n <= hi)]
        res["range_ratio"] = {"range": [lo, hi], "min": min(sel) if sel else None, "max": max(sel) if sel else None}
        rows.append({"build": b["label"], **res})
        ctx.csv(f"distortion-{b['label']}", ["n", "distance", "ratio"],
                zip(res["n"], res["distance"], res["ratio"]))
    return {"mode": "exhaustive", "region": "cusped build (BFS from the identity)", "results": {"per_build": rows}}


def _a_vertical(p, ctx):
    rows = []
    window = p.get("window")
    for b in ctx.targets(p, default="cusped"):
        aud = vertical_ray_contraction_audit(b["cb"], p["cosets"], int(p.get("depth_used", b["depth"])),
                                             subgroup=p.get("subgroup"))
        if window is not None:
            for prof in aud["profiles"]:
                prof["trend"] = sublinearity_trend(prof["rho_hat"], int(window)).to_dict()
        rows.append({"build": b["label"], **aud})
    return {"mode": "exhaustive", "region": "ball of the common certified radius around each coset base point",
            "results": {"per_build": rows}}


def _axis(ball, h: str, half: int | None) -> GeodesicPath:
    m = ball.model
    hw = m.parse(h)
    half = ball.radius // len(hw) if half is None else int(half)
    return GeodesicPath(tuple(ball.vertex_of(m.power(hw, k)) for k in range(-half, half + 1)))


def _a_profile(p, ctx):
    rows = []
    for b in ctx.targets(p, default="ball"):
        gamma = _axis(b["ball"], p.get("axis", "a"), p.get("half_length"))
        if not is_geodesic(b["graph"], gamma.vertices):
            raise InputError(f"axis {p.get('axis', 'a')} is not geodesic in build {b['label']}")
        prof = contraction_profile(b["graph"], gamma, max_r=p.get("max_r"))
        row = {"build": b["label"], "gamma_length": gamma.length, **prof.to_dict()}
        if "window" in p:
            row["trend"] = sublinearity_trend(prof, int(p["window"])).to_dict()
        rows.append(row)
        ctx.csv(f"profile-{b['label']}", ["r", "rho_hat"], enumerate(prof.rho_hat))
    return {"mode": "exhaustive", "region": "whole build, scales truncated at max_r", "results": {"per_build": rows}}


def _a_tree_baseline(p, ctx):
    rows = []
    count = int(p.get("geodesics", 100))
    for b in ctx.targets(p, default="ball"):
        g = b["graph"]
        rng = np.random.default_rng([ctx.seed, count])
        peaks = []
        from .morse.gauge import Distances

        dist = Distances(g)
        while len(peaks) < count:
            u, v = (int(x) for x in rng.integers(0, g.vertex_count, size=2))
            if u == v:
                continue
            prof = contraction_profile(g, GeodesicPath(tuple(dist.geodesic(u, v))))
            peaks.append(max(prof.rho_hat))
        fp = four_point_delta(g, "exhaustive")
        sl = slim_triangle_delta(g, "exhaustive")
        rows.append({"build": b["label"], "geodesics": count, "max_rho_hat": max(peaks),
                     "four_point": fp.to_dict(), "slim": sl.to_dict()})
    return {"mode": "exhaustive", "region": "whole build", "seed": ctx.seed, "results": {"per_build": rows}}


def _a_hull_sequence(p, ctx):
    model = ctx.model
    rad = int(p.get("region_radius", 4))
    out = {}
    for fam, sets in p["families"].items():
        series, rows = [], []
        for item in sets:
            words = [model.parse(w) for w in item["directions"]]
            centers = sorted({w[:i] for w in words for i in range(len(w) + 1)})
            reg = cayley_region(model, centers, rad)
            hull = weak_hull(reg.graph, reg.origin, [reg.index[w] for w in words])
            sub = hull.induced_graph
            sl = slim_triangle_delta(sub, "exhaustive")
            fp = four_point_delta(sub, "exhaustive")
            rows.append({"k": item["k"], "region_vertices": reg.graph.vertex_count, "hull_vertices": sub.vertex_count,
                         "hull_edges": sub.edge_count, "slim": sl.to_dict(), "four_point": fp.to_dict()})
            series.append((item["k"], sl.delta_slim))
        res = {"per_k": rows}
        tail = [s for s in series if s[0] >= p.get("plateau_from", 0)]
        if len(tail) >= 3:
            res["plateau"] = plateau_audit(tail).to_dict()
        out[fam] = res
        ctx.csv(f"hull-{fam}", ["k", "delta_slim"], series)
    return {"mode": "exhaustive", "region": f"induced hull inside the radius-{rad} neighbourhood of the direction words",
            "results": out}


def _a_stability(p, ctx):
    total = AuditSummary()
    for label, g, o, gam, dist in small_instances(ctx.seed, int(p.get("geodesics_per_instance", 8))):
        total.merge(stability_audit(g, gam, label=label, dist=dist))
    d = total.to_dict()
    d["per_instance"] = [{k: v for k, v in row.items() if k != "gauge"}
                         | {"gauge_saturated": all(e["saturated"] for e in row["gauge"]["entries"]),
                            "max_N_hat": max(e["N_hat"] for e in row["gauge"]["entries"])}
                         for row in d["per_instance"]]
    return {"mode": "exhaustive", "region": "trees and grids of radius <= 5", "seed": ctx.seed, "results": d}


def _a_slim(p, ctx):
    total = AuditSummary(all_saturated=False)
    per = int(p.get("targets_per_sphere", 16))
    for label, g, o, _, dist in small_instances(ctx.seed, 0):
        R = int(label.rsplit("-r", 1)[1])
        for rad in range(2, R + 1):
            total.merge(slim_audit(g, o, slim_targets(g, o, rad, per, ctx.seed), label=f"{label}/s{rad}",
                                   seed=ctx.seed, dist=dist))
    return {"mode": "sampled", "region": "trees and grids of radius <= 5", "seed": ctx.seed,
            "results": total.to_dict()}


def _a_kformula(p, ctx):
    rows = []
    for case in p["cases"]:
        kind = case["profile"]
        if kind == "zero":
            prof = ContractionProfile.from_values([0] * (int(case.get("support", 16)) + 1))
        elif kind == "ceil_sqrt":
            prof = ceil_sqrt_profile(int(case["support"]))
        else:
            prof = ContractionProfile.from_values(list(kind))
        res = k_of(prof, Fraction(str(case["L"])), Fraction(str(case["A"])))
        rows.append({"case": case, "support": prof.support, **res.to_dict()})
    return {"mode": "exhaustive", "region": "profile support as listed", "results": {"cases": rows}}


ANALYSES = {"horoball-exactness": _a_horoball_exactness, "delta": _a_delta, "distortion": _a_distortion,
            "vertical-audit": _a_vertical, "profile": _a_profile, "tree-baseline": _a_tree_baseline,
            "hull-sequence": _a_hull_sequence, "stability-audit": _a_stability, "slim-audit": _a_slim,
            "k-formula": _a_kformula}


# -- driver --------------------------------------------------------------------

class _Context:
    def __init__(self, cfg: ExperimentConfig, csv_dir: Path | None):
        self.cfg = cfg
        self.seed = cfg.seed
        self.builds: list[dict] = []
        self.model = None
        self.csv_dir = csv_dir
        self.csv_files: list[str] = []
        self.prefix = ""

    def targets(self, p: dict, default: str | None = None) -> list[dict]:
        want = p.get("on", default)
        sel = [b for b in self.builds if want is None or b["kind"] == want]
        if not sel:
            raise InputError(f"analysis {p['kind']!r} has no {want or ''} build to run on")
        if want is None:
            # prefer cusped builds when both kinds exist
            cusped = [b for b in sel if b["kind"] == "cusped"]
            sel = cusped or sel
        return sel

    def csv(self, name: str, header, rows) -> None:
        if self.csv_dir is None:
            return
        self.csv_dir.mkdir(parents=True, exist_ok=True)
        fn = f"{self.prefix}{name}.csv"
        with open(self.csv_dir / fn, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for r in rows:
                w.writerow(jsonable(list(r)))
        self.csv_files.append(fn)


def _build_record(b: dict) -> dict:
    out = {k: b[k] for k in ("label", "kind", "radius", "depth")}
    g = b["graph"]
    out.update(vertices=g.vertex_count, edges=g.edge_count)
    ball = b["ball"]
    out["generating_set"] = [ball.model.format(w) for w in ball.generating_set]
    if b["kind"] == "cusped":
        cb = b["cb"]
        out["certification"] = asdict(cb.certification)
        out["certified_radius"] = cb.certified_radius
        out["split_traces"] = len(cb.split_traces)
        out["horoballs"] = len(cb.horoball_atlas)
    return out


def run(config: ExperimentConfig, *, out_dir: str | Path | None = None) -> dict:
    """Execute a config: build, certify, analyze. Never raises on module errors;
    a failing stage is recorded in ``failed_stage`` and the partial report returned."""
    out_dir = Path(out_dir) if out_dir is not None else None
    csv_dir = Path(config.outputs["csv_dir"]) if config.outputs.get("csv_dir") else (
        out_dir if out_dir is not None else None)
    ctx = _Context(config, csv_dir)
    report = {"schema_version": SCHEMA_VERSION, "tool": {"name": "cuspidal", "version": __version__},
              "config": config.to_dict(), "status": "OK", "failed_stage": None, "builds": [], "analyses": [],
              "csv_files": [], TIMING_KEY: {}}
    timings = report[TIMING_KEY]
    budgets = config.budgets
    stage = "build"
    try:
        t0 = time.perf_counter()
        if config.group is not None:
            model, subs = load_group_spec(config.group)
            ctx.model = model
            kind = config.build.get("kind", "ball")
            for R in config.radii:
                stage = f"build:radius={R}"
                if kind == "tube":
                    ball = power_tube(model, config.build["h"], int(config.build["n"]), R, subs,
                                      vertex_budget=int(budgets.get("vertex_budget", 5_000_000)))
                elif kind == "ball":
                    ball = cayley_ball(model, R, subs, vertex_budget=int(budgets.get("vertex_budget", 5_000_000)))
                else:
                    raise InputError(f"unknown build kind {kind!r}")
                ctx.builds.append({"label": f"r{R}", "kind": "ball", "radius": R, "depth": None,
                                   "graph": ball.graph, "ball": ball})
                if subs:
                    for D in config.depths:
                        stage = f"build:radius={R},depth={D}"
                        cb = build_cusped_ball(ball, D, vertex_budget=int(budgets.get("vertex_budget", 5_000_000)))
                        stage = f"certify:radius={R},depth={D}"
                        certify(cb)
                        ctx.builds.append({"label": f"r{R}d{D}", "kind": "cusped", "radius": R, "depth": D,
                                           "graph": cb.graph, "ball": ball, "cb": cb})
        report["builds"] = [_build_record(b) for b in ctx.builds]
        timings["build_and_certify"] = time.perf_counter() - t0
        for i, a in enumerate(config.analyses):
            stage = f"analyze:{a['kind']}"
            ctx.prefix = f"{i:02d}-"
            t0 = time.perf_counter()
            res = ANALYSES[a["kind"]](a, ctx)
            res.setdefault("seed", config.seed if ExperimentConfig._sampled(a) else None)
            report["analyses"].append({"kind": a["kind"], "params": a, **res})
            timings[f"{i:02d}-{a['kind']}"] = time.perf_counter() - t0
    except CuspidalError as exc:
        report["status"] = "FAILED"
        report["failed_stage"] = {"stage": stage, "error": type(exc).__name__, "message": str(exc),
                                  "exit_code": exc.exit_code}
        report["builds"] = [_build_record(b) for b in ctx.builds]
    report["csv_files"] = ctx.csv_files
    report = jsonable(report)
    if out_dir is not None or config.outputs.get("json"):
        path = Path(config.outputs["json"]) if config.outputs.get("json") else out_dir / f"{config.name}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(report))
    return report



# -- recipes ---------------------------------------------------------------------

F2_REL_A = {"family": "free", "rank": 2, "generators": ["a", "b"],
            "subgroups": [{"name": "A", "generators": ["a"]}]}
F2 = {"family": "free", "rank": 2, "generators": ["a", "b"]}
Z2_REL_B = {"family": "free_abelian", "rank": 2, "generators": ["a", "b"],
            "subgroups": [{"name": "B", "generators": ["b"]}]}
Z_FREE_Z2 = {"family": "free_product", "factors": [
    {"family": "free", "rank": 1, "generators": ["a"]},
    {"family": "free_abelian", "rank": 2, "generators": ["b", "c"]}]}


def _zxz2_families(length: int = 12, kmax: int = 4) -> dict:
    def word(parts):
        return " ".join(f"{g}^{n}" for g, n in parts if n) or "e"

    base = [word([("a", -length)]), word([("a", length)])]
    gam, bet = [], []
    for K in range(1, kmax + 1):
        gam.append({"k": K, "directions": base + [word([("a", k), ("b", k), ("a", length - 2 * k)])
                                                  for k in range(1, K + 1)]})
        bet.append({"k": K, "directions": base + [word([("a", k), ("b", k), ("c", k), ("a", length - 3 * k)])
                                                  for k in range(1, K + 1)]})
    return {"gamma": gam, "beta": bet}


@dataclass(frozen=True)
class Recipe:
    name: str
    description: str
    criterion: int | None
    config: dict

    def build_config(self) -> ExperimentConfig:
        return ExperimentConfig.from_dict(json.loads(json.dumps(self.config)))


def recipes() -> list[Recipe]:
    return [
        Recipe("horoball-exactness", "Horoball over a 33-vertex path at depth 6 against the pairwise edge rule.", 1,
               {"name": "horoball-exactness",
                "analyses": [{"kind": "horoball-exactness", "base_size": 33, "depth": 6}]}),
        Recipe("thm41-distortion",
               "Cusped F2 rel <a> over the tube around a^-1024..a^1024, depth 12: d(e, a^n) against log2 n.", 2,
               {"name": "thm41-distortion", "group": F2_REL_A, "radii": [1], "depths": [12],
                "build": {"kind": "tube", "h": "a", "n": 1024},
                "analyses": [{"kind": "distortion", "h": "a", "n_max": 1024, "check_range": [64, 1024]}]}),
        Recipe("tree-baseline", "F2 ball of radius 8: contraction, four-point and slim delta all vanish.", 3,
               {"name": "tree-baseline", "group": F2, "radii": [8], "seed": 0,
                "analyses": [{"kind": "tree-baseline", "geodesics": 100}]}),
        Recipe("intro-z2-empty-boundary",
               "Z2: the axis is not contracting in the flat ball, nor are vertical rays of Z2 rel <b>.", 4,
               {"name": "intro-z2-empty-boundary", "group": Z2_REL_B, "radii": [24], "depths": [10],
                "analyses": [{"kind": "profile", "on": "ball", "axis": "a", "max_r": 12, "window": 4},
                             {"kind": "vertical-audit", "cosets": ["e", "a", "A", "a^2"], "subgroup": "B",
                              "window": 2}]}),
        Recipe("paper-remark-zxz2",
               "Z*Z2: weak hulls over the gamma_k directions stay thin, over the beta_k directions they thicken.", 5,
               {"name": "paper-remark-zxz2", "group": Z_FREE_Z2,
                "analyses": [{"kind": "hull-sequence", "region_radius": 4, "plateau_from": 2,
                              "families": _zxz2_families()}]}),
        Recipe("stability-audit",
               "Stability bound for every verified quasi-geodesic on small trees and grids.", 6,
               {"name": "stability-audit", "seed": 0,
                "analyses": [{"kind": "stability-audit", "geodesics_per_instance": 8}]}),
        Recipe("slim-audit", "Slimness bound for Morse-pair triangles on small trees and grids.", 7,
               {"name": "slim-audit", "seed": 0,
                "analyses": [{"kind": "slim-audit", "targets_per_sphere": 16}]}),
        Recipe("k-formula", "Fellow-travelling constant k for zero and ceil-sqrt contraction.", 8,
               {"name": "k-formula",
                "analyses": [{"kind": "k-formula", "cases": [
                    {"profile": "zero", "L": 1, "A": 0}, {"profile": "zero", "L": 2, "A": 5},
                    {"profile": "ceil_sqrt", "support": 64, "L": 1, "A": 0}]}]}),
        Recipe("relhyp-control",
               "Cusped F2 rel <a> at radii 6, 8, 10 and depth 8: sampled delta plateau, uniform vertical rays.", 9,
               {"name": "relhyp-control", "group": F2_REL_A, "radii": [6, 8, 10], "depths": [8], "seed": 0,
                "analyses": [{"kind": "delta", "on": "cusped", "mode": "sampled", "budget": 1_000_000},
                             {"kind": "vertical-audit", "cosets": ["e", "b", "B", "ab"], "subgroup": "A"}]}),
    ]


def recipe(name: str) -> Recipe:
    for r in recipes():
        if r.name == name:
            return r
    raise InputError(f"unknown recipe {name!r}; known: {[r.name for r in recipes()]}")
