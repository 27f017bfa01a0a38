"""Finite unit-length graphs with exact shortest-path machinery.

Every space in the package (Cayley balls, horoballs, cusped balls) is a
:class:`UnitGraph`: an immutable, connected, simple, undirected graph stored
in CSR form with sorted neighbor lists. Distances are exact integers.

Vertex sets are returned as sorted ``int64`` numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InputError

DEFAULT_GEODESIC_CAP = 100_000


class UnitGraph:
    """Immutable simple graph on vertices ``0..n-1`` with unit edge lengths."""

    __slots__ = ("indptr", "indices", "labels")

    def __init__(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        labels: Sequence | None = None,
        *,
        require_connected: bool = True,
    ):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.indptr = indptr
        self.indices = indices
        if labels is not None and len(labels) != self.vertex_count:
            raise InputError("labels must have one entry per vertex")
        self.labels = labels
        if require_connected and self.vertex_count > 0:
            dist = _kernels.bfs(indptr, indices, np.zeros(1, np.int64), -1)
            if (dist < 0).any():
                raise InputError("graph is not connected")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: np.ndarray | Iterable[tuple[int, int]],
        labels: Sequence | None = None,
        *,
        require_connected: bool = True,
    ) -> "UnitGraph":
        """Build from an undirected edge list; duplicates collapse to one edge."""
        e = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise InputError("edges must be an (m, 2) array")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InputError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise InputError("self-loops are not allowed")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        keys = np.unique(src * n + dst)
        src = keys // n
        indices = keys - src * n
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, indices, labels, require_connected=require_connected)

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]] | Sequence[Iterable[int]],
                       labels: Sequence | None = None) -> "UnitGraph":
        """Build from per-vertex neighbor lists; adjacency must be symmetric."""
        items = adj.items() if isinstance(adj, Mapping) else enumerate(adj)
        rows = {int(k): sorted({int(x) for x in v}) for k, v in items}
        n = len(rows)
        if sorted(rows) != list(range(n)):
            raise InputError("vertex ids must be dense 0..n-1")
        for u, nbrs in rows.items():
            for w in nbrs:
                if w not in rows or u not in rows[w]:
                    raise InputError(f"adjacency is not symmetric at {u}-{w}")
        edges = [(u, w) for u, nbrs in rows.items() for w in nbrs if u < w]
        return cls.from_edges(n, edges, labels)

    @property
    def vertex_count(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def edge_count(self) -> int:
        return self.indices.shape[0] // 2

    def __len__(self) -> int:
        return self.vertex_count

    def __repr__(self) -> str:
        return f"UnitGraph(vertices={self.vertex_count}, edges={self.edge_count})"

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.shape[0] and row[i] == v)

    def edges(self) -> np.ndarray:
        """Edge list ``(m, 2)`` with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), np.diff(self.indptr))
        mask = src < self.indices
        return np.stack([src[mask], self.indices[mask]], axis=1)

    def check_vertex(self, v) -> int:
        v = int(v)
        if not 0 <= v < self.vertex_count:
            raise InputError(f"unknown vertex {v}")
        return v

    def bfs(self, sources, maxdist: int | None = None) -> np.ndarray:
        """Distances from a vertex or a set of vertices (multi-source)."""
        src = np.atleast_1d(np.asarray(sources, dtype=np.int64))
        if src.size == 0:
            raise InputError("BFS needs at least one source")
        if src.min() < 0 or src.max() >= self.vertex_count:
            raise InputError("unknown source vertex")
        return _kernels.bfs(self.indptr, self.indices, src, -1 if maxdist is None else int(maxdist))

    def distance_matrix(self, sources=None, cols=None) -> np.ndarray:
        """Exact distances between ``sources`` (rows) and ``cols`` (columns), int32."""
        allv = np.arange(self.vertex_count, dtype=np.int64)
        s = allv if sources is None else np.asarray(sources, dtype=np.int64)
        c = allv if cols is None else np.asarray(cols, dtype=np.int64)
        return _kernels.distance_rows(self.indptr, self.indices, s, c)

    def subgraph(self, vertices) -> tuple["UnitGraph", np.ndarray]:
        """Induced subgraph on ``vertices`` (renumbered in increasing id order).

        Returns the subgraph and the array mapping new ids to old ids.
        """
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        local = np.full(self.vertex_count, -1, np.int64)
        local[keep] = np.arange(keep.shape[0])
        e = self.edges()
        m = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
        sub_edges = local[e[m]]
        labels = None if self.labels is None else [self.labels[int(v)] for v in keep]
        return UnitGraph.from_edges(keep.shape[0], sub_edges, labels), keep


@dataclass(frozen=True)
class GeodesicPath:
    """A vertex sequence whose consecutive entries are adjacent."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True)
class GeodesicEnumeration:
    paths: list[GeodesicPath]
    truncated: bool
    total: float  # exact count as float; may exceed the cap


def distance(g: UnitGraph, u: int, v: int) -> int:
    u = g.check_vertex(u)
    v = g.check_vertex(v)
    return int(_kernels.bfs_pair(g.indptr, g.indices, u, v))


def is_path(g: UnitGraph, vertices: Sequence[int]) -> bool:
    return len(vertices) > 0 and all(g.has_edge(a, b) for a, b in zip(vertices, vertices[1:]))


def is_geodesic(g: UnitGraph, vertices: Sequence[int]) -> bool:
    return is_path(g, vertices) and distance(g, vertices[0], vertices[-1]) == len(vertices) - 1


def some_geodesic(g: UnitGraph, u: int, v: int, dist_to_v: np.ndarray | None = None) -> GeodesicPath:
    """Canonical geodesic: at each step move to the least-id neighbor that gets closer to v.

    The greedy rule produces the lexicographically least vertex sequence among
    all geodesics from ``u`` to ``v``.
    """
    u = g.check_vertex(u)
    v = g.check_vertex(v)
    dv = g.bfs(v) if dist_to_v is None else dist_to_v
    path = [u]
    cur = u
    while cur != v:
        row = g.neighbors(cur)
        cur = int(row[np.argmax(dv[row] == dv[cur] - 1)])
        path.append(cur)
    return GeodesicPath(tuple(path))


def all_geodesics(g: UnitGraph, u: int, v: int, cap: int | None = DEFAULT_GEODESIC_CAP) -> GeodesicEnumeration:
    """Every u-v geodesic in lexicographic order, or the first ``cap`` with ``truncated`` set."""
    u = g.check_vertex(u)
    v = g.check_vertex(v)
    if cap is not None and cap < 1:
        raise InputError("cap must be >= 1")
    du = g.bfs(u)
    dv = g.bfs(v)
    total = float(_kernels.count_geodesics(g.indptr, g.indices, du, dv, v))
    limit = np.inf if cap is None else cap
    paths: list[GeodesicPath] = []
    # Explicit stack of (vertex, index into its successor list).
    succ_cache: dict[int, list[int]] = {}

    def successors(x: int) -> list[int]:
        s = succ_cache.get(x)
        if s is None:
            row = g.neighbors(x)
            s = [int(w) for w in row[dv[row] == dv[x] - 1]]
            succ_cache[x] = s
        return s

    stack = [u]
    pos = [0]
    while stack and len(paths) < limit:
        x = stack[-1]
        if x == v:
            paths.append(GeodesicPath(tuple(stack)))
            stack.pop()
            pos.pop()
            continue
        s = successors(x)
        i = pos[-1]
        if i < len(s):
            pos[-1] = i + 1
            stack.append(s[i])
            pos.append(0)
        else:
            stack.pop()
            pos.pop()
    return GeodesicEnumeration(paths, truncated=len(paths) < total, total=total)


def geodesic_interval(g: UnitGraph, u: int, v: int) -> np.ndarray:
    """All vertices lying on at least one u-v geodesic."""
    du = g.bfs(u)
    dv = g.bfs(v)
    return np.flatnonzero(du + dv == du[v]).astype(np.int64)


def sphere(g: UnitGraph, o: int, r: int) -> np.ndarray:
    if r < 0:
        raise InputError("radius must be non-negative")
    d = g.bfs(g.check_vertex(o), maxdist=r)
    return np.flatnonzero(d == r).astype(np.int64)


def ball(g: UnitGraph, o: int, r: int) -> np.ndarray:
    if r < 0:
        raise InputError("radius must be non-negative")
    d = g.bfs(g.check_vertex(o), maxdist=r)
    return np.flatnonzero(d >= 0).astype(np.int64)


def set_distance(g: UnitGraph, A, B) -> int:
    """min over a in A, b in B of d(a, b)."""
    A = _as_vertex_set(g, A)
    B = _as_vertex_set(g, B)
    return int(g.bfs(A)[B].min())


def hausdorff_distance(g: UnitGraph, A, B) -> int:
    A = _as_vertex_set(g, A)
    B = _as_vertex_set(g, B)
    return int(max(g.bfs(A)[B].max(), g.bfs(B)[A].max()))


def _as_vertex_set(g: UnitGraph, S) -> np.ndarray:
    arr = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64))
    if arr.size == 0:
        raise InputError("vertex set must be non-empty")
    if arr[0] < 0 or arr[-1] >= g.vertex_count:
        raise InputError("unknown vertex in set")
    return arr


# -- import / export ---------------------------------------------------------

def format_adjacency(g: UnitGraph) -> str:
    lines = []
    for v in range(g.vertex_count):
        nbrs = " ".join(str(int(w)) for w in g.neighbors(v))
        lines.append(f"{v}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def parse_adjacency(text: str) -> UnitGraph:
    adj: dict[int, list[int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'id: n1 n2 ...'")
        try:
            adj[int(head)] = [int(x) for x in tail.split()]
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return UnitGraph.from_adjacency(adj)


def write_adjacency(g: UnitGraph, path: str | Path) -> None:
    Path(path).write_text(format_adjacency(g))


def read_adjacency(path: str | Path) -> UnitGraph:
    return parse_adjacency(Path(path).read_text())


def to_dot(g: UnitGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    if g.labels is not None:
        for v, lab in enumerate(g.labels):
            out.append(f'  {v} [label="{lab}"];')
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
