"""Weak hulls of finite direction sets, hull coverage, and the stable-set proxy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..cusped import BASE, CuspedBall, certified_mask
from ..errors import InputError
from ..graph import UnitGraph, _as_vertex_set, all_geodesics, some_geodesic
from .contraction import SUBLINEAR, contraction_profile, sublinearity_trend


@dataclass(eq=False)
class WeakHullResult:
    """Union of all geodesics between pairs of directions, plus its induced subgraph.

    ``keep[i]`` is the ambient id of vertex ``i`` of ``induced_graph``.
    """

    direction_set: list[int]
    hull_vertices: np.ndarray
    induced_graph: UnitGraph
    keep: np.ndarray
    origin: int
    anchor_radius: int
    pair_count: int
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"directions": list(self.direction_set), "hull_size": int(self.hull_vertices.shape[0]),
                "induced_edges": self.induced_graph.edge_count, "origin": self.origin,
                "anchor_radius": self.anchor_radius, "pair_count": self.pair_count, **self.meta}


def weak_hull(g: UnitGraph, o: int, directions, pair_cap: int | None = None) -> WeakHullResult:
    """Finite weak hull: every vertex on some geodesic between two directions.

    The union of all geodesics between u and v is exactly the geodesic
    interval {x : d(u, x) + d(x, v) = d(u, v)}, so no enumeration (and no
    cap) is needed; ``pair_cap`` is accepted for interface compatibility and
    only bounds the optional per-pair geodesic census.
    """
    dirs = [g.check_vertex(d) for d in dict.fromkeys(int(x) for x in directions)]
    if len(dirs) < 2:
        raise InputError("a weak hull needs at least two directions")
    o = g.check_vertex(o)
    rows = {d: g.bfs(d) for d in dirs}
    mask = np.zeros(g.vertex_count, bool)
    census = []
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            u, v = dirs[i], dirs[j]
            du, dv = rows[u], rows[v]
            mask |= du + dv == du[v]
            if pair_cap is not None:
                en = all_geodesics(g, u, v, cap=pair_cap)
                census.append({"pair": [u, v], "geodesics": en.total, "truncated": en.truncated})
    verts = np.flatnonzero(mask).astype(np.int64)
    sub, keep = g.subgraph(verts)
    do = g.bfs(o)
    meta = {"geodesic_census": census} if census else {}
    return WeakHullResult(direction_set=dirs, hull_vertices=verts, induced_graph=sub, keep=keep, origin=o,
                          anchor_radius=int(max(do[d] for d in dirs)), pair_count=len(dirs) * (len(dirs) - 1) // 2,
                          meta=meta)


def contracting_directions(cb: CuspedBall, window: int = 4, *, anchor_radius: int | None = None) -> list[int]:
    """Group vertices on the certified sphere whose canonical geodesic from the origin
    has a SUBLINEAR-CONSISTENT contraction profile over the certified ball.

    The verdict needs a support of at least ``2 * window`` scales; below that the
    proxy abstains and returns no directions.
    """
    r = cb.certified_radius if anchor_radius is None else int(anchor_radius)
    if r < 2 * window:
        return []
    g = cb.graph
    cert = certified_mask(cb, cb.origin, r)
    region = np.flatnonzero(cert)
    d = g.bfs(cb.origin)
    out = []
    for v in np.flatnonzero((d == r) & (cb.kind == BASE) & cert).tolist():
        path = some_geodesic(g, cb.origin, v)
        prof = contraction_profile(g, path, region)
        if prof.support >= 2 * window and sublinearity_trend(prof, window).verdict == SUBLINEAR:
            out.append(v)
    return out


def hull_coverage_audit(cb: CuspedBall, hull: WeakHullResult | None, margin: int) -> dict:
    """Share of certified vertices within ``margin`` of the hull, by vertex kind."""
    if hull is None or len(hull.direction_set) < 2:
        return {"status": "NO-DIRECTIONS", "margin": int(margin)}
    cert = certified_mask(cb)
    d = cb.graph.bfs(hull.hull_vertices, maxdist=margin)
    near = d >= 0
    out = {"status": "OK", "margin": int(margin), "certified_radius": cb.certified_radius}
    for name, sel in (("all", cert), ("group", cert & (cb.kind == BASE)), ("horoball", cert & (cb.kind != BASE))):
        tot = int(sel.sum())
        out[name] = {"certified": tot, "covered": int((near & sel).sum()),
                     "fraction": float((near & sel).sum() / tot) if tot else None}
    return out


def stable_set_proxy(g: UnitGraph, e: int, c: int, r: int, *, geodesic_cap: int = 8,
                     region=None) -> dict:
    """Vertices v of the r-ball around e joined to e by some enumerated geodesic
    whose contraction profile stays <= c at every measured scale.

    Profiles are measured over ``region`` (default: the r-ball itself).
    """
    e = g.check_vertex(e)
    de = g.bfs(e, maxdist=r)
    ball_v = np.flatnonzero(de >= 0).astype(np.int64)
    reg = ball_v if region is None else _as_vertex_set(g, region)
    members, peaks = [], {}
    truncated = 0
    for v in ball_v.tolist():
        en = all_geodesics(g, e, v, cap=geodesic_cap)
        truncated += int(en.truncated)
        best = None
        for path in en.paths:
            prof = contraction_profile(g, path, reg)
            peak = max(prof.rho_hat)
            best = peak if best is None else min(best, peak)
            if peak <= c:
                break
        peaks[v] = int(best)
        if best <= c:
            members.append(v)
    return {"members": np.asarray(members, np.int64), "threshold": int(c), "radius": int(r),
            "ball_size": int(ball_v.shape[0]), "best_peak": peaks, "truncated_vertices": truncated}
