"""Truncated cusped spaces: a Cayley ball with a horoball glued on every coset trace.

Vertex numbering is deterministic: the ball's vertices keep their ids, then each
attached horoball contributes its positive levels in trace order, level-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import InputError, ResourceError
from .graph import UnitGraph
from .groups import CayleyBall, SubgroupSpec, _apply_move, intrinsic_coset_edges
from .horoball import HoroballGraph, build_horoball

DEFAULT_VERTEX_BUDGET = 5_000_000
DEFAULT_AUDIT_WORK = 400_000_000

BASE, HORO = 0, 1


@dataclass(eq=False)
class HoroballAttachment:
    """One horoball of the atlas, glued along (a connected piece of) a coset trace."""

    subgroup: str
    trace_index: int
    piece: int
    trace: np.ndarray
    horoball: HoroballGraph
    embedding: np.ndarray
    trace_boundary: np.ndarray

    @property
    def size(self) -> int:
        return int(self.trace.shape[0])

    def vertex(self, local_base: int, level: int) -> int:
        return int(self.embedding[level * self.size + local_base])


@dataclass(frozen=True)
class Certification:
    radius: int
    lower_bound: int
    exact: bool
    shell_distance: int
    center: int


@dataclass(eq=False)
class CuspedBall:
    graph: UnitGraph
    base_ball: CayleyBall
    horoball_atlas: list[HoroballAttachment]
    depth: int
    kind: np.ndarray
    coset_id: np.ndarray
    base_vertex: np.ndarray
    level: np.ndarray
    split_traces: list[tuple[str, int]] = field(default_factory=list)

    @property
    def radius(self) -> int:
        return self.base_ball.radius

    @property
    def origin(self) -> int:
        return self.base_ball.origin

    @cached_property
    def certification(self) -> Certification:
        return certify(self)

    @property
    def certified_radius(self) -> int:
        return self.certification.radius

    def attachment_of(self, subgroup: str, g) -> HoroballAttachment:
        """Atlas entry whose trace contains the ball vertex of ``g``."""
        v = self.base_ball.vertex_of(g) if not isinstance(g, (int, np.integer)) else int(g)
        for att in self.horoball_atlas:
            if att.subgroup == subgroup and v in set(att.trace.tolist()):
                return att
        raise InputError(f"no {subgroup} horoball over vertex {v}")

    def vertex(self, g, level: int = 0, subgroup: str | None = None) -> int:
        """Vertex id of ``(g, level)``; positive levels need the subgroup name."""
        v = self.base_ball.vertex_of(g) if not isinstance(g, (int, np.integer)) else int(g)
        if level == 0:
            return v
        if subgroup is None:
            if len(self.base_ball.subgroups) != 1:
                raise InputError("subgroup name required")
            subgroup = self.base_ball.subgroups[0].name
        att = self.attachment_of(subgroup, v)
        local = int(np.flatnonzero(att.trace == v)[0])
        if not 0 <= level <= self.depth:
            raise InputError(f"level {level} outside 0..{self.depth}")
        return att.vertex(local, level)

    def key(self, v: int) -> tuple:
        """Size-independent name of a vertex: (subgroup, base word, level)."""
        b = int(self.base_vertex[v])
        word = self.base_ball.words[b]
        if self.kind[v] == BASE:
            return ("", word, 0)
        return (self.horoball_atlas[int(self.coset_id[v])].subgroup, word, int(self.level[v]))

    def vertex_by_key(self) -> dict:
        return {self.key(v): v for v in range(self.graph.vertex_count)}


def _components(n: int, edges: np.ndarray) -> list[np.ndarray]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [np.asarray(g, np.int64) for g in sorted(groups.values(), key=lambda g: g[0])]


def _trace_boundary(ball: CayleyBall, sub: SubgroupSpec, trace: np.ndarray) -> np.ndarray:
    """Local indices of trace vertices with a subgroup-generator neighbor outside the ball."""
    model = ball.model
    moves = [m for g in sub.generator_words for m in (g, model.inverse(model.normal_form(g)))]
    out = []
    for i, v in enumerate(trace):
        w = ball.words[int(v)]
        if any(_apply_move(model, w, m) not in ball.index for m in moves):
            out.append(i)
    return np.asarray(out, np.int64)


def build_cusped_ball(ball: CayleyBall, depth: int, *,
                      vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> CuspedBall:
    nbase = ball.graph.vertex_count
    if not ball.subgroups:
        z = np.zeros(nbase, np.int64)
        return CuspedBall(graph=ball.graph, base_ball=ball, horoball_atlas=[], depth=depth,
                          kind=z.astype(np.int8), coset_id=z - 1,
                          base_vertex=np.arange(nbase, dtype=np.int64), level=z.astype(np.int16))
    if depth < 1:
        raise InputError("depth must be >= 1")
    pieces = []
    split = []
    total = nbase
    for sub in ball.subgroups:
        for ti, trace in enumerate(ball.horosphere_traces[sub.name]):
            edges = intrinsic_coset_edges(ball, sub, trace)
            comps = [np.arange(trace.shape[0])] if trace.shape[0] == 1 else _components(trace.shape[0], edges)
            if len(comps) > 1:
                split.append((sub.name, ti))
            bd_local = set(_trace_boundary(ball, sub, trace).tolist())
            for pi, comp in enumerate(comps):
                remap = -np.ones(trace.shape[0], np.int64)
                remap[comp] = np.arange(comp.shape[0])
                keep = (remap[edges[:, 0]] >= 0) if edges.size else np.zeros(0, bool)
                local_edges = remap[edges[keep]] if edges.size else edges
                bd = np.asarray([remap[i] for i in sorted(bd_local) if remap[i] >= 0], np.int64)
                pieces.append((sub.name, ti, pi, trace[comp], local_edges, bd))
                total += comp.shape[0] * depth
    if total > vertex_budget:
        raise ResourceError(f"cusped ball needs {total} vertices (budget {vertex_budget})",
                            needed=total, budget=vertex_budget)

    templates: dict[tuple, HoroballGraph] = {}
    grouped: dict[tuple, list[int]] = {}
    atlas: list[HoroballAttachment] = []
    kind = np.zeros(total, np.int8)
    coset_id = np.full(total, -1, np.int64)
    base_vertex = np.empty(total, np.int64)
    level = np.zeros(total, np.int16)
    base_vertex[:nbase] = np.arange(nbase)
    offset = nbase
    for name, ti, pi, trace, local_edges, bd in pieces:
        size = trace.shape[0]
        key = (size, np.ascontiguousarray(local_edges).tobytes())
        hb = templates.get(key)
        if hb is None:
            base = UnitGraph.from_edges(size, local_edges)
            hb = templates[key] = build_horoball(base, depth, vertex_budget=vertex_budget)
        emb = np.empty((depth + 1) * size, np.int64)
        emb[:size] = trace
        emb[size:] = offset + np.arange(depth * size)
        cid = len(atlas)
        sl = slice(offset, offset + depth * size)
        kind[sl] = HORO
        coset_id[sl] = cid
        base_vertex[sl] = np.tile(trace, depth)
        level[sl] = np.repeat(np.arange(1, depth + 1), size)
        atlas.append(HoroballAttachment(subgroup=name, trace_index=ti, piece=pi, trace=trace,
                                        horoball=hb, embedding=emb, trace_boundary=bd))
        grouped.setdefault(key, []).append(cid)
        offset += depth * size

    parts = [ball.graph.edges()]
    for key, ids in grouped.items():
        hb = templates[key]
        E = hb.graph.edges()
        emb = np.stack([atlas[i].embedding for i in ids])
        parts.append(emb[:, E].reshape(-1, 2))
    graph = UnitGraph.from_edges(total, np.concatenate(parts))
    return CuspedBall(graph=graph, base_ball=ball, horoball_atlas=atlas, depth=depth, kind=kind,
                      coset_id=coset_id, base_vertex=base_vertex, level=level, split_traces=split)


SHELLS = ("boundary", "frontier")


def frontier_mask(cb: CuspedBall, shell: str = "boundary") -> np.ndarray:
    """Truncation shells.

    ``"boundary"``: ball-boundary group elements plus the depth cap.
    ``"frontier"``: additionally every horoball vertex whose 2^n-neighborhood
    reaches past its trace, i.e. every vertex missing a neighbor of the
    untruncated space. Much stricter; radii shrink to a few steps.
    """
    if shell not in SHELLS:
        raise InputError(f"unknown shell {shell!r}")
    mask = np.zeros(cb.graph.vertex_count, bool)
    mask[cb.base_ball.boundary] = True
    for att in cb.horoball_atlas:
        size = att.size
        top = att.embedding[cb.depth * size:]
        mask[top] = True
        if shell == "boundary" or att.trace_boundary.size == 0:
            continue
        dbd = att.horoball.base_distances[:, att.trace_boundary].min(axis=1)
        for n in range(1, cb.depth):
            hit = np.flatnonzero(dbd <= 2 ** n - 1)
            mask[att.embedding[n * size + hit]] = True
    return mask


def certify(cb: CuspedBall, center: int | None = None, *, shell: str = "boundary",
            work_budget: int = DEFAULT_AUDIT_WORK) -> Certification:
    """Largest r such that all geodesics between points of B(center, r) keep
    distance >= 2 from every truncation shell.

    Starts from the provable value floor((d(center, N_1(shell)) - 1) / 2) and
    extends it by exhaustive wavefront audits while the work budget allows;
    ``exact`` records whether maximality was established.
    """
    g = cb.graph
    c = cb.origin if center is None else g.check_vertex(center)
    shell = frontier_mask(cb, shell)
    if not shell.any():
        ecc = int(g.bfs(c).max())
        return Certification(radius=ecc, lower_bound=ecc, exact=True, shell_distance=-1, center=c)
    near = g.bfs(np.flatnonzero(shell), maxdist=1) >= 0
    dc = g.bfs(c)
    ds = int(dc[near].min())
    r_max = min(ds - 1, cb.radius)
    if r_max < 0:
        return Certification(radius=0, lower_bound=0, exact=True, shell_distance=ds, center=c)
    lower = max(0, min((ds - 1) // 2, r_max))
    r = lower
    exact = lower == r_max
    n = g.vertex_count
    while r < r_max:
        nxt = r + 1
        sources = np.flatnonzero((dc >= 0) & (dc <= nxt))
        if sources.shape[0] * n > work_budget:
            break
        ok, _, _ = _kernels.geodesic_flag_audit(g.indptr, g.indices, sources, (dc >= 0) & (dc <= nxt),
                                                near, 2 * nxt)
        if not ok:
            exact = True
            break
        r = nxt
    else:
        exact = True
    return Certification(radius=r, lower_bound=lower, exact=exact, shell_distance=ds, center=c)


def certified_radius(cb: CuspedBall) -> int:
    return cb.certified_radius


def certified_mask(cb: CuspedBall, center: int | None = None, radius: int | None = None) -> np.ndarray:
    cert = cb.certification if center is None else certify(cb, center)
    r = cert.radius if radius is None else radius
    d = cb.graph.bfs(cert.center, maxdist=r)
    return d >= 0


def export_sidecar(cb: CuspedBall) -> str:
    """``vertex_id kind coset_id base_word level`` per line."""
    labels = [cb.base_ball.model.format(w) for w in cb.base_ball.words]
    out = []
    for v in range(cb.graph.vertex_count):
        k = "base" if cb.kind[v] == BASE else "horo"
        out.append(f"{v} {k} {int(cb.coset_id[v])} {labels[int(cb.base_vertex[v])]} {int(cb.level[v])}")
    return "\n".join(out) + "\n"
