"""Command line entry point ``cuspidal``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CuspidalError, InputError
from .graph import GeodesicPath, UnitGraph, format_adjacency, read_adjacency, to_dot


class Space:
    """A graph plus, when built from a group, the ball / cusped ball it came from."""

    def __init__(self, graph: UnitGraph, ball=None, cb=None):
        self.graph, self.ball, self.cb = graph, ball, cb

    def vertex(self, token: str, subgroup: str | None = None) -> int:
        """``17`` (raw id), ``ab^2`` (word), or ``ab@3`` (word at horoball level 3)."""
        token = token.strip()
        if token.lstrip("-").isdigit():
            return self.graph.check_vertex(int(token))
        if self.ball is None:
            raise InputError(f"vertex {token!r}: words need --group")
        word, _, level = token.partition("@")
        if level:
            if self.cb is None:
                raise InputError("levels need --depth")
            return self.cb.vertex(word, int(level), subgroup)
        return self.ball.vertex_of(word)

    def path(self, text: str, subgroup: str | None = None) -> GeodesicPath:
        """Comma-separated vertex tokens, ``axis:h`` / ``axis:h:m`` for h^-m .. h^m,
        or ``axis:h:lo:hi`` for h^lo .. h^hi."""
        if text.startswith("axis:"):
            if self.ball is None:
                raise InputError("axis paths need --group")
            parts = text.split(":")
            m = self.ball.model
            hw = m.parse(parts[1])
            if len(parts) > 3:
                lo, hi = int(parts[2]), int(parts[3])
            else:
                hi = int(parts[2]) if len(parts) > 2 else self.ball.radius // len(hw)
                lo = -hi
            return GeodesicPath(tuple(self.ball.vertex_of(m.power(hw, k)) for k in range(lo, hi + 1)))
        return GeodesicPath(tuple(self.vertex(t, subgroup) for t in text.split(",") if t.strip()))


def _load_space(args) -> Space:
    if getattr(args, "graph", None):
        return Space(read_adjacency(args.graph))
    if not getattr(args, "group", None):
        raise InputError("give --graph or --group with --radius")
    from .cusped import build_cusped_ball
    from .groups import cayley_ball, load_group_spec, power_tube

    model, subs = load_group_spec(args.group)
    if args.radius is None:
        raise InputError("--radius is required with --group")
    if getattr(args, "tube", None):
        h, _, n = args.tube.partition(":")
        ball = power_tube(model, h, int(n), args.radius, subs)
    else:
        ball = cayley_ball(model, args.radius, subs)
    if getattr(args, "depth", None) is not None:
        if not subs:
            raise InputError("--depth needs peripheral subgroups in the group spec")
        cb = build_cusped_ball(ball, args.depth)
        return Space(cb.graph, ball, cb)
    return Space(ball.graph, ball)


def _emit(args, payload: dict) -> None:
    from .report import dumps

    text = dumps(payload)
    if getattr(args, "out", None):
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(path: str | None, header, rows) -> None:
    if not path:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _grid(text: str):
    out = []
    for item in text.split(";"):
        k, c = item.split(",")
        out.append((Fraction(k), Fraction(c)))
    return out


# -- commands ------------------------------------------------------------------

def cmd_run(args):
    from .report import ExperimentConfig, run

    rep = run(ExperimentConfig.load(args.config), out_dir=args.out)
    if args.out is None:
        _emit(args, rep)
    return rep


def cmd_recipe(args):
    from .report import recipe, recipes, run

    if args.name == "list":
        for r in recipes():
            print(f"{r.name:26s} {r.description}")
        return None
    rep = run(recipe(args.name).build_config(), out_dir=args.out)
    if args.out is None:
        _emit(argparse.Namespace(out=None), rep)
    return rep


def cmd_export_graph(args):
    sp = _load_space(args)
    text = to_dot(sp.graph) if args.format == "dot" else format_adjacency(sp.graph)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.sidecar:
        if sp.cb is not None:
            from .cusped import export_sidecar

            Path(args.sidecar).write_text(export_sidecar(sp.cb))
        elif sp.ball is not None:
            m = sp.ball.model
            Path(args.sidecar).write_text("".join(f"{i} {m.format(w)}\n" for i, w in enumerate(sp.ball.words)))
    return None


def cmd_delta(args):
    from .hyperbolicity import delta_report

    sp = _load_space(args)
    rep = delta_report(sp.graph, args.mode, args.budget, args.seed)
    _emit(args, {"vertices": sp.graph.vertex_count, **rep.to_dict()})


def cmd_project(args):
    from .morse import project

    sp = _load_space(args)
    res = project(sp.graph, sp.path(args.gamma, args.subgroup), sp.vertex(args.x, args.subgroup))
    _emit(args, {"point": res.point, "projection": res.projection, "positions": res.positions,
                 "dist_to_path": res.dist_to_path, "diameter": res.diameter})


def cmd_profile(args):
    from .morse import contraction_profile, sublinearity_trend

    sp = _load_space(args)
    gammas = [sp.path(t, args.subgroup) for t in args.gamma]
    cert = None
    if sp.cb is not None:
        from .cusped import certified_mask

        cert = certified_mask(sp.cb)
    prof = contraction_profile(sp.graph, gammas, max_r=args.max_r, certified=cert)
    out = prof.to_dict()
    if args.window:
        out["trend"] = sublinearity_trend(prof, args.window).to_dict()
    _csv(args.csv, ["r", "rho_hat"], enumerate(prof.rho_hat))
    _emit(args, out)


def cmd_gauge(args):
    from .morse import morse_gauge_probe

    sp = _load_space(args)
    table = morse_gauge_probe(sp.graph, sp.path(args.gamma, args.subgroup), _grid(args.grid), args.budget,
                              args.seed, exhaustive=args.exhaustive)
    _emit(args, table.to_dict())


def cmd_audit_stability(args):
    from .morse import AuditSummary, small_instances, stability_audit

    if args.graph or args.group:
        sp = _load_space(args)
        summ = stability_audit(sp.graph, sp.path(args.gamma, args.subgroup))
    else:
        summ = AuditSummary()
        for label, g, _, gam, dist in small_instances(args.seed, args.geodesics):
            summ.merge(stability_audit(g, gam, label=label, dist=dist))
    _emit(args, summ.to_dict())


def cmd_audit_slim(args):
    from .morse import AuditSummary, slim_audit, small_instances
    from .morse.audits import slim_targets

    if args.graph or args.group:
        sp = _load_space(args)
        summ = slim_audit(sp.graph, sp.vertex(args.origin), [sp.vertex(t) for t in args.targets.split(",")],
                          seed=args.seed)
    else:
        summ = AuditSummary(all_saturated=False)
        for label, g, o, _, dist in small_instances(args.seed, 0):
            R = int(label.rsplit("-r", 1)[1])
            for rad in range(2, R + 1):
                summ.merge(slim_audit(g, o, slim_targets(g, o, rad, args.targets_per_sphere, args.seed),
                                      label=f"{label}/s{rad}", seed=args.seed, dist=dist))
    _emit(args, summ.to_dict())


def cmd_fq_test(args):
    from .morse import contraction_profile, fq_neighbor_test

    sp = _load_space(args)
    alpha = sp.path(args.alpha, args.subgroup)
    prof = contraction_profile(sp.graph, alpha)
    res = fq_neighbor_test(sp.graph, sp.vertex(args.o), alpha, args.r, sp.path(args.beta, args.subgroup),
                           Fraction(args.L), Fraction(args.A), prof)
    _emit(args, res.to_dict())


def cmd_dl_test(args):
    from .morse import dl_neighbor_test

    sp = _load_space(args)
    res = dl_neighbor_test(sp.graph, sp.vertex(args.p), sp.path(args.alpha, args.subgroup), args.n,
                           sp.path(args.gamma, args.subgroup), float(Fraction(args.deltaN)), int(args.gauge))
    _emit(args, res.to_dict())


def cmd_hull(args):
    from .morse import hull_coverage_audit, weak_hull

    sp = _load_space(args)
    hull = weak_hull(sp.graph, sp.vertex(args.origin), [sp.vertex(t) for t in args.directions.split(",")],
                     pair_cap=args.pair_cap)
    out = hull.to_dict()
    if sp.cb is not None and args.margin is not None:
        out["coverage"] = hull_coverage_audit(sp.cb, hull, args.margin)
    _emit(args, out)


def cmd_stable_set(args):
    from .morse import stable_set_proxy

    sp = _load_space(args)
    res = stable_set_proxy(sp.graph, sp.vertex(args.e), args.c, args.r, geodesic_cap=args.cap)
    if sp.ball is not None and sp.cb is None:
        res["member_words"] = [sp.ball.model.format(sp.ball.words[v]) for v in res["members"]]
    _emit(args, res)


def cmd_vertical_audit(args):
    from .morse import vertical_ray_contraction_audit

    sp = _load_space(args)
    if sp.cb is None:
        raise InputError("vertical-audit needs --group with --depth")
    _emit(args, vertical_ray_contraction_audit(sp.cb, args.cosets.split(","), args.depth_used or sp.cb.depth,
                                               subgroup=args.subgroup))


def cmd_distortion(args):
    from .morse import power_path_distortion

    sp = _load_space(args)
    if sp.cb is None:
        raise InputError("distortion needs --group with --depth")
    res = power_path_distortion(sp.cb, args.h, args.n_max)
    _csv(args.csv, ["n", "distance", "ratio"], zip(res["n"], res["distance"], res["ratio"]))
    _emit(args, res)


# -- parser ----------------------------------------------------------------------

def _space_args(p, cusped: bool = True):
    p.add_argument("--graph", help="adjacency-list file")
    p.add_argument("--group", help="group spec JSON file")
    p.add_argument("--radius", type=int)
    p.add_argument("--tube", help="h:n, build the tube around h^-n..h^n instead of a ball")
    if cusped:
        p.add_argument("--depth", type=int, help="attach horoballs of this depth")
    p.add_argument("--subgroup", help="peripheral subgroup for word@level tokens")
    p.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cuspidal", description="Cayley balls, horoballs, cusped spaces and "
                                 "Morse-type experiments on finite graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="output directory for the report and CSV sidecars")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("recipe", help="run a built-in recipe ('list' to enumerate)")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_recipe)

    p = sub.add_parser("export-graph", help="write a graph as adjacency list or DOT")
    _space_args(p)
    p.add_argument("--format", choices=("adj", "dot"), default="adj")
    p.add_argument("--sidecar", help="vertex coordinate sidecar file")
    p.set_defaults(func=cmd_export_graph)
    p.set_defaults(out=None)

    p = sub.add_parser("delta", help="four-point and slim-triangle delta")
    _space_args(p)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("project", help="closest-point projection onto a path")
    _space_args(p)
    p.add_argument("--gamma", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("profile", help="contraction profile of one or more geodesics")
    _space_args(p)
    p.add_argument("--gamma", action="append", required=True)
    p.add_argument("--max-r", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("gauge", help="Morse gauge lower bounds")
    _space_args(p)
    p.add_argument("--gamma", required=True)
    p.add_argument("--grid", default="1,0;1,1;3,0", help="K,C pairs separated by ';'")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("audit-stability", help="stability-bound audit (default: built-in small instances)")
    _space_args(p)
    p.add_argument("--gamma")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--geodesics", type=int, default=8)
    p.set_defaults(func=cmd_audit_stability)

    p = sub.add_parser("audit-slim", help="slim-triangle audit (default: built-in small instances)")
    _space_args(p)
    p.add_argument("--origin")
    p.add_argument("--targets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--targets-per-sphere", type=int, default=16)
    p.set_defaults(func=cmd_audit_slim)

    p = sub.add_parser("fq-test", help="fellow-travelling neighbourhood test")
    _space_args(p)
    for name in ("--o", "--alpha", "--beta", "--L", "--A"):
        p.add_argument(name, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_fq_test)

    p = sub.add_parser("dl-test", help="neighbourhood test against a gauge value")
    _space_args(p)
    for name in ("--p", "--alpha", "--gamma", "--deltaN", "--gauge"):
        p.add_argument(name, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_dl_test)

    p = sub.add_parser("hull", help="weak hull of a direction set")
    _space_args(p)
    p.add_argument("--origin", default="0")
    p.add_argument("--directions", required=True)
    p.add_argument("--pair-cap", type=int)
    p.add_argument("--margin", type=int)
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("stable-set", help="stable-set proxy around a base point")
    _space_args(p)
    p.add_argument("--e", default="0")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--cap", type=int, default=8)
    p.set_defaults(func=cmd_stable_set)

    p = sub.add_parser("vertical-audit", help="vertical-ray contraction across cosets")
    _space_args(p)
    p.add_argument("--cosets", required=True, help="comma-separated base words")
    p.add_argument("--depth-used", type=int)
    p.set_defaults(func=cmd_vertical_audit)

    p = sub.add_parser("distortion", help="d(e, h^n) in a cusped ball")
    _space_args(p)
    p.add_argument("--h", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_distortion)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except CuspidalError as exc:
        print(f"cuspidal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cuspidal: input error: {exc}", file=sys.stderr)
        return 2
    if isinstance(rep, dict) and rep.get("status") == "FAILED":
        fs = rep["failed_stage"]
        print(f"cuspidal: stage {fs['stage']} failed: {fs['error']}: {fs['message']}", file=sys.stderr)
        return int(fs["exit_code"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
