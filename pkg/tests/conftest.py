from __future__ import annotations

from collections import deque

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from cuspidal.graph import UnitGraph


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 12, max_extra: int = 14):
    """Random connected simple graphs: a random spanning tree plus extra chords."""
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(p, i) for i, p in enumerate(parents, start=1)}
    for _ in range(draw(st.integers(0, max_extra))):
        u, v = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return UnitGraph.from_edges(n, sorted(edges))


def to_nx(g: UnitGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(map(tuple, g.edges().tolist()))
    return h


def from_nx(h: nx.Graph) -> tuple[UnitGraph, dict]:
    nodes = sorted(h.nodes())
    idx = {x: i for i, x in enumerate(nodes)}
    return UnitGraph.from_edges(len(nodes), [(idx[a], idx[b]) for a, b in h.edges()]), idx


def oracle_distances(g: UnitGraph) -> np.ndarray:
    """Plain-Python BFS from every vertex."""
    n = g.vertex_count
    adj = [list(map(int, g.neighbors(v))) for v in range(n)]
    D = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        D[s, s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if D[s, y] < 0:
                    D[s, y] = D[s, x] + 1
                    q.append(y)
    return D


def oracle_geodesics(g: UnitGraph, u: int, v: int) -> list[tuple[int, ...]]:
    """All shortest u-v paths by depth-limited DFS over simple paths."""
    D = oracle_distances(g)
    d = int(D[u, v])
    adj = [list(map(int, g.neighbors(x))) for x in range(g.vertex_count)]
    out = []

    def dfs(path):
        x = path[-1]
        if len(path) - 1 == d:
            if x == v:
                out.append(tuple(path))
            return
        for y in adj[x]:
            if y not in path:
                dfs(path + [y])

    dfs([u])
    return sorted(out)


def path_graph(n: int) -> UnitGraph:
    return UnitGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> UnitGraph:
    return UnitGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture(scope="session")
def f2_rel_a_8_6():
    from cuspidal.cusped import build_cusped_ball
    from cuspidal.groups import FreeGroup, cayley_ball

    F = FreeGroup(2)
    return build_cusped_ball(cayley_ball(F, 8, [F.subgroup("A", ["a"])]), 6)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
