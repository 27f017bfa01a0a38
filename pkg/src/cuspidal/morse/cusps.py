"""Experiments inside cusped balls: vertical-ray contraction and power-path distortion."""

from __future__ import annotations

import math

import numpy as np

from ..cusped import CuspedBall, certify
from ..errors import InputError
from ..graph import GeodesicPath, ball
from .contraction import contraction_profile


def vertical_ray_contraction_audit(cb: CuspedBall, cosets, depth_used: int, *,
                                   subgroup: str | None = None) -> dict:
    """Contraction profiles of the vertical rays over several coset base points.

    Every ray and its region are confined to the radius certified around its
    own base point; one common radius (the smallest) is used so that the
    profiles are comparable. The uniformity gap is the largest sup-norm
    difference between any two profiles.
    """
    words = list(cosets)
    if len(words) < 2:
        raise InputError("sample at least two cosets")
    model = cb.base_ball.model
    centers = [cb.base_ball.vertex_of(w) for w in words]
    certs = [certify(cb, c) for c in centers]
    r = min([int(depth_used)] + [c.radius for c in certs])
    if r < 1:
        raise InputError("certified region around a coset base point is empty")
    profiles = []
    for w, c in zip(words, centers):
        ray = GeodesicPath(tuple(cb.vertex(c, n, subgroup) for n in range(r + 1)))
        region = ball(cb.graph, c, r)
        prof = contraction_profile(cb.graph, ray, region)
        label = w if isinstance(w, str) else model.format(model.normal_form(w))
        profiles.append({"coset": label, "base_vertex": int(c), "rho_hat": prof.rho_hat,
                         "region_size": prof.region_size, "witnesses": prof.pair_witnesses})
    width = max(len(p["rho_hat"]) for p in profiles)

    def padded(p):
        v = p["rho_hat"]
        return np.asarray(v + [v[-1]] * (width - len(v)))

    gap = 0
    for i in range(len(profiles)):
        for j in range(i + 1, len(profiles)):
            gap = max(gap, int(np.abs(padded(profiles[i]) - padded(profiles[j])).max()))
    return {"radius_used": r, "certified_radii": [c.radius for c in certs], "profiles": profiles,
            "uniformity_gap": gap}


def power_path_distortion(cb: CuspedBall, h, n_max: int) -> dict:
    """d(e, h^n) in the cusped metric for n = 1..n_max, with a log2 fit on the top half."""
    model = cb.base_ball.model
    hw = model.parse(h) if isinstance(h, str) else model.normal_form(h)
    if not hw:
        raise InputError("h must be non-trivial")
    d = cb.graph.bfs(cb.origin)
    ns, ds = [], []
    truncated = False
    for n in range(1, int(n_max) + 1):
        w = model.power(hw, n)
        if w not in cb.base_ball.index:
            truncated = True
            break
        ns.append(n)
        ds.append(int(d[cb.base_ball.index[w]]))
    out = {"h": model.format(hw), "n": ns, "distance": ds, "truncated": truncated,
           "ratio": [round(dd / math.log2(n), 12) if n >= 2 else None for n, dd in zip(ns, ds)]}
    half = [k for k, n in enumerate(ns) if n >= max(2, (ns[-1] + 1) // 2)] if ns else []
    if len(half) >= 2:
        x = np.log2(np.asarray([ns[k] for k in half], float))
        y = np.asarray([ds[k] for k in half], float)
        slope, intercept = np.polyfit(x, y, 1)
        out["fit"] = {"slope": round(float(slope), 12), "intercept": round(float(intercept), 12),
                      "range": [ns[half[0]], ns[half[-1]]]}
    return out
