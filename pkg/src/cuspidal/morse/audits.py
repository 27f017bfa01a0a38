"""Batch audits of the stability and slimness bounds on small exhaustively probed instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..graph import GeodesicPath, UnitGraph
from .contraction import _path
from .gauge import (Distances, MorseGaugeTable, morse_gauge_probe, satisfies_qg, simple_paths_on,
                    slim_check_morse_pair, verify_stability_bound)


@dataclass
class AuditSummary:
    audited: int = 0
    violations: int = 0
    all_saturated: bool = True
    worst_margin: float | None = None
    examples: list = field(default_factory=list)
    per_instance: list = field(default_factory=list)

    def merge(self, other: "AuditSummary") -> None:
        self.audited += other.audited
        self.violations += other.violations
        self.all_saturated &= other.all_saturated
        if other.worst_margin is not None:
            self.worst_margin = other.worst_margin if self.worst_margin is None else min(
                self.worst_margin, other.worst_margin)
        self.examples += other.examples[: max(0, 5 - len(self.examples))]
        self.per_instance += other.per_instance

    def to_dict(self) -> dict:
        return {"audited": self.audited, "violations": self.violations, "all_saturated": self.all_saturated,
                "worst_margin": self.worst_margin, "examples": self.examples,
                "per_instance": self.per_instance}


def stability_audit(g: UnitGraph, gamma, params=((1, 0), (1, 1), (1, 2)), *,
                    path_budget: int = 2_000_000, label: str = "",
                    dist: Distances | None = None) -> AuditSummary:
    """Every simple (lam, eps)-quasi-geodesic with endpoints on gamma, checked
    against 2 N_hat(lam, eps') + (lam + eps) on the matching sub-segment.

    The gauge comes from exhaustive enumeration up to length lam (d + eps'),
    so an entry is SATURATED whenever that enumeration was not truncated.
    """
    gamma = _path(gamma)
    dist = dist or Distances(g)
    params = [(Fraction(lam), Fraction(eps)) for lam, eps in params]
    grid = sorted({k for lam, eps in params for k in ((lam, eps), (lam, 2 * (lam + eps)))})
    gauge = morse_gauge_probe(g, gamma, grid, families=(), exhaustive=True, path_budget=path_budget,
                              dist=dist)
    summary = AuditSummary()
    gv = gamma.vertices
    caps = {(i, j): max(int(lam * ((j - i) + eps)) for lam, eps in params)
            for i in range(len(gv)) for j in range(i + 1, len(gv))}
    for i, j, p in simple_paths_on(g, gamma, caps, dist, path_budget):
        arr = np.asarray(p, np.int64)
        block = dist.block(arr)
        seg = GeodesicPath(gv[i:j + 1])
        for lam, eps in params:
            if not satisfies_qg(arr, block, lam, eps):
                continue
            rec = verify_stability_bound(g, seg, gauge, p, lam, eps, dist)
            summary.audited += 1
            summary.all_saturated &= bool(rec.detail["saturated"])
            margin = rec.bound - rec.measured
            summary.worst_margin = margin if summary.worst_margin is None else min(summary.worst_margin, margin)
            if not rec.passed:
                summary.violations += 1
                if len(summary.examples) < 5:
                    summary.examples.append({"path": p, "lam": str(lam), "eps": str(eps), **rec.to_dict()})
    summary.per_instance.append({"instance": label, "gamma_length": gamma.length, "audited": summary.audited,
                                 "gauge": gauge.to_dict()})
    return summary


def slim_audit(g: UnitGraph, o: int, targets, *, budget: int = 400, seed: int = 0,
               label: str = "", dist: Distances | None = None) -> AuditSummary:
    """All triangles formed by pairs of canonical geodesics from ``o`` to ``targets``
    and the canonical third side, against 4 N_hat(3, 0) of the pair."""
    dist = dist or Distances(g)
    alphas = [GeodesicPath(tuple(dist.geodesic(int(t), o)[::-1])) for t in targets]
    n3 = []
    for a in alphas:
        table: MorseGaugeTable = morse_gauge_probe(g, a, [(3, 0)], budget=budget, seed=seed, dist=dist)
        n3.append(table.value(3, 0))
    summary = AuditSummary(all_saturated=False)
    for i in range(len(alphas)):
        for j in range(i + 1, len(alphas)):
            rec = slim_check_morse_pair(g, o, alphas[i], alphas[j], max(n3[i], n3[j]), dist)
            summary.audited += 1
            margin = rec.bound - rec.measured
            summary.worst_margin = margin if summary.worst_margin is None else min(summary.worst_margin, margin)
            if not rec.passed:
                summary.violations += 1
                if len(summary.examples) < 5:
                    summary.examples.append({"targets": [int(targets[i]), int(targets[j])], **rec.to_dict()})
    summary.per_instance.append({"instance": label, "directions": len(alphas), "audited": summary.audited,
                                 "max_N3": int(max(n3)) if n3 else 0})
    return summary


def small_instances(seed: int = 0, geodesics_per_instance: int = 12):
    """Trees and grids of radius <= 5 with seeded geodesics: the audit instance class.

    Yields (label, graph, origin, gamma, dist) tuples; gammas are canonical geodesics
    between random vertex pairs at distance >= 4, plus the a-axis diameter.
    """
    from ..groups import FreeAbelianGroup, FreeGroup, cayley_ball

    specs = [("free2-r5", FreeGroup(2), 5), ("free3-r4", FreeGroup(3), 4),
             ("z2-r3", FreeAbelianGroup(2), 3), ("z2-r4", FreeAbelianGroup(2), 4),
             ("z2-r5", FreeAbelianGroup(2), 5)]
    for label, model, R in specs:
        b = cayley_ball(model, R)
        g = b.graph
        dist = Distances(g)
        axis = GeodesicPath(tuple(b.vertex_of(model.power((1,), k)) for k in range(-R, R + 1)))
        yield label, g, b.origin, axis, dist
        rng = np.random.default_rng([seed, len(label), R])
        made = 0
        while made < geodesics_per_instance:
            u, v = (int(x) for x in rng.integers(0, g.vertex_count, size=2))
            if dist.row(v)[u] < 4:
                continue
            yield label, g, b.origin, GeodesicPath(tuple(dist.geodesic(u, v))), dist
            made += 1


def slim_targets(g: UnitGraph, o: int, radius: int, count: int, seed: int = 0) -> list[int]:
    """Seeded sample of ``count`` sphere vertices at distance ``radius`` from ``o`` (sorted)."""
    from ..graph import sphere

    sph = sphere(g, o, radius)
    if sph.shape[0] <= count:
        return [int(x) for x in sph]
    rng = np.random.default_rng([seed, radius, count])
    return sorted(int(x) for x in rng.choice(sph, size=count, replace=False))
