"""Truncated combinatorial horoballs over a finite base graph.

Vertices are pairs ``(x, n)`` with ``x`` a base vertex and ``0 <= n <= depth``;
vertex id is ``n * base_size + x`` (level-major). Edges:

* vertical ``(x, n) -- (x, n + 1)``;
* level 0 copies the base edges;
* level ``n >= 1`` joins ``(x, n)`` and ``(y, n)`` whenever ``0 < d_H(x, y) <= 2**n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import InputError, ResourceError
from .graph import GeodesicPath, UnitGraph

DEFAULT_VERTEX_BUDGET = 5_000_000
DEFAULT_EDGE_BUDGET = 40_000_000


class HoroVertex(NamedTuple):
    base: int
    level: int


@dataclass(frozen=True)
class VerticalRay:
    base: int
    path: GeodesicPath


@dataclass(eq=False)
class HoroballGraph:
    base: UnitGraph
    depth: int
    graph: UnitGraph
    base_distances: np.ndarray

    @property
    def base_size(self) -> int:
        return self.base.vertex_count

    def vertex(self, x: int, n: int) -> int:
        if not (0 <= x < self.base_size and 0 <= n <= self.depth):
            raise InputError(f"({x}, {n}) is not a vertex of this horoball")
        return n * self.base_size + x

    def coords(self, v: int) -> HoroVertex:
        n, x = divmod(int(v), self.base_size)
        return HoroVertex(x, n)

    @property
    def levels(self) -> np.ndarray:
        return np.repeat(np.arange(self.depth + 1), self.base_size)


def horoball_edges(base_distances: np.ndarray, base_edges: np.ndarray, depth: int) -> np.ndarray:
    """Edge list of the truncated horoball (ids ``n * nb + x``)."""
    nb = base_distances.shape[0]
    parts = [np.asarray(base_edges, np.int64).reshape(-1, 2)]
    xs = np.arange(nb, dtype=np.int64)
    for n in range(depth):
        parts.append(np.stack([n * nb + xs, (n + 1) * nb + xs], axis=1))
    if nb > 1 and depth >= 1:
        iu, ju = np.triu_indices(nb, 1)
        dij = base_distances[iu, ju]
        order = np.argsort(dij, kind="stable")
        iu, ju, dij = iu[order], ju[order], dij[order]
        for n in range(1, depth + 1):
            k = np.searchsorted(dij, 2 ** n, side="right")
            parts.append(np.stack([n * nb + iu[:k], n * nb + ju[:k]], axis=1))
    return np.concatenate(parts)


def predicted_edge_count(base_distances: np.ndarray, base_edge_count: int, depth: int) -> int:
    nb = base_distances.shape[0]
    iu, ju = np.triu_indices(nb, 1)
    dij = np.sort(base_distances[iu, ju])
    horiz = sum(int(np.searchsorted(dij, 2 ** n, side="right")) for n in range(1, depth + 1))
    return base_edge_count + depth * nb + horiz


def build_horoball(base: UnitGraph, depth: int, *, vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                   edge_budget: int = DEFAULT_EDGE_BUDGET) -> HoroballGraph:
    if depth < 1:
        raise InputError("depth must be >= 1")
    nb = base.vertex_count
    needed = nb * (depth + 1)
    if needed > vertex_budget:
        raise ResourceError(f"horoball needs {needed} vertices (budget {vertex_budget})",
                            needed=needed, budget=vertex_budget)
    D = base.distance_matrix()
    if nb > 1:
        m = predicted_edge_count(D, base.edge_count, depth)
        if m > edge_budget:
            raise ResourceError(f"horoball needs {m} edges (budget {edge_budget})",
                                needed=m, budget=edge_budget)
    edges = horoball_edges(D, base.edges(), depth)
    graph = UnitGraph.from_edges(needed, edges)
    return HoroballGraph(base=base, depth=depth, graph=graph, base_distances=D)


def horoball_distance(hb: HoroballGraph, u: HoroVertex | tuple, v: HoroVertex | tuple) -> int:
    a = hb.vertex(*u)
    b = hb.vertex(*v)
    return int(_kernels.bfs_pair(hb.graph.indptr, hb.graph.indices, a, b))


def vertical_ray(hb: HoroballGraph, base: int) -> VerticalRay:
    path = tuple(hb.vertex(base, n) for n in range(hb.depth + 1))
    return VerticalRay(base=base, path=GeodesicPath(path))


def geodesic_max_level(hb: HoroballGraph, u: HoroVertex | tuple, v: HoroVertex | tuple) -> int:
    """Highest level touched by any geodesic between u and v."""
    a = hb.vertex(*u)
    b = hb.vertex(*v)
    da = hb.graph.bfs(a)
    db = hb.graph.bfs(b)
    on = np.flatnonzero(da + db == da[b])
    return int((on // hb.base_size).max())


def level_bound(hb: HoroballGraph, u: HoroVertex | tuple, v: HoroVertex | tuple) -> int:
    """Empirical ceiling for geodesic height: max level + ceil(log2 d_H) + 2."""
    dh = int(hb.base_distances[u[0], v[0]])
    return max(u[1], v[1]) + (math.ceil(math.log2(dh)) if dh > 1 else 0) + 2


def is_certified_pair(hb: HoroballGraph, u: HoroVertex | tuple, v: HoroVertex | tuple) -> bool:
    """True when every u-v geodesic stays at least two levels below the depth cap."""
    return geodesic_max_level(hb, u, v) <= hb.depth - 2


def distance_by_depth(base: UnitGraph, u: HoroVertex | tuple, v: HoroVertex | tuple,
                      depths) -> dict[int, int]:
    """Truncated distance between two horoball vertices at several depths."""
    out = {}
    for D in depths:
        hb = build_horoball(base, D)
        out[int(D)] = horoball_distance(hb, u, v)
    return out


def stabilization_depth(base: UnitGraph, x: int, y: int, max_depth: int) -> int | None:
    """Least depth from which d((x,0),(y,0)) no longer changes up to ``max_depth``."""
    series = distance_by_depth(base, (x, 0), (y, 0), range(1, max_depth + 1))
    final = series[max_depth]
    stable = None
    for D in range(max_depth, 0, -1):
        if series[D] != final:
            break
        stable = D
    return stable


def export_coordinates(hb: HoroballGraph) -> str:
    """Sidecar text: ``vertex_id base level`` per line."""
    lines = [f"{v} {x} {n}" for v, (x, n) in ((v, hb.coords(v)) for v in range(hb.graph.vertex_count))]
    return "\n".join(lines) + "\n"
