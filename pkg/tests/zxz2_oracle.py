"""Stand-alone Z*Z^2 geometry for cross-checking the hull experiment.

Group elements are reduced letter strings over aAbBcC; regions, hulls and
deltas are built with networkx and numpy only.
"""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np

LETTERS = "aAbBcC"


def zxz2_oracle_nf(letters: str) -> str:
    """Independent Z*Z2 reduction: collapse syllables to exponents, merge, drop trivial ones."""
    syl = []  # list of ("a", k) or ("bc", (x, y))
    for ch in letters:
        if ch in "aA":
            piece = ("a", 1 if ch == "a" else -1)
        else:
            piece = ("bc", {"b": (1, 0), "B": (-1, 0), "c": (0, 1), "C": (0, -1)}[ch])
        if syl and syl[-1][0] == piece[0]:
            k, v = syl.pop()
            merged = v + piece[1] if k == "a" else (v[0] + piece[1][0], v[1] + piece[1][1])
            if merged not in (0, (0, 0)):
                syl.append((k, merged))
        else:
            syl.append(piece)
    out = []
    for k, v in syl:
        if k == "a":
            out.append(("a" if v > 0 else "A") * abs(v))
        else:
            out.append(("b" if v[0] > 0 else "B") * abs(v[0]) + ("c" if v[1] > 0 else "C") * abs(v[1]))
    return "".join(out) or "e"


def expand(word: str) -> str:
    """'a^2 b^-1' -> 'aaB'."""
    out = ""
    for tok in word.split():
        g, _, n = tok.partition("^")
        n = int(n or 1)
        out += (g if n > 0 else g.upper()) * abs(n)
    return "" if word == "e" else out


def mul(x: str, letter: str) -> str:
    return zxz2_oracle_nf(("" if x == "e" else x) + letter)


def region(centers, radius: int) -> nx.Graph:
    seen = set()
    frontier = set(centers)
    seen |= frontier
    for _ in range(radius):
        frontier = {mul(x, ch) for x in frontier for ch in LETTERS} - seen
        seen |= frontier
    g = nx.Graph()
    g.add_nodes_from(seen)
    g.add_edges_from((x, y) for x in seen for ch in "abc" if (y := mul(x, ch)) in seen)
    return g


def hull(directions: list[str], radius: int = 4) -> nx.Graph:
    words = [zxz2_oracle_nf(expand(w)) for w in directions]
    raw = [expand(w) for w in directions]
    centers = {zxz2_oracle_nf(r[:i]) for r in raw for i in range(len(r) + 1)}
    g = region(centers, radius)
    rows = {w: nx.single_source_shortest_path_length(g, w) for w in words}
    keep = set()
    for u, v in itertools.combinations(words, 2):
        du, dv = rows[u], rows[v]
        keep |= {x for x in g if x in du and x in dv and du[x] + dv[x] == du[v]}
    return g.subgraph(keep).copy()


def four_point_delta(g: nx.Graph) -> float:
    nodes = list(g)
    D = np.asarray(nx.floyd_warshall_numpy(g, nodelist=nodes), dtype=np.int64)
    best = 0
    for x in range(len(nodes)):
        for y in range(x, len(nodes)):
            s1 = D[x, y] + D[:, :, None][:, :, 0]  # d(x,y) + d(z,w)
            s2 = D[x][:, None] + D[y][None, :]     # d(x,z) + d(y,w)
            s3 = s2.T                              # d(x,w) + d(y,z)
            top = np.maximum(np.maximum(s1, s2), s3)
            low = np.minimum(np.minimum(s1, s2), s3)
            mid = s1 + s2 + s3 - top - low
            best = max(best, int((top - mid).max()))
    return best / 2


def slim_delta(g: nx.Graph) -> int:
    """Slimness with lexicographically least geodesic sides (vertices ordered by string)."""
    nodes = sorted(g)
    idx = {x: i for i, x in enumerate(nodes)}
    D = np.asarray(nx.floyd_warshall_numpy(g, nodelist=nodes), dtype=np.int64)
    nbrs = [sorted(idx[y] for y in g[x]) for x in nodes]
    n = len(nodes)

    def side(u, v):
        path = [u]
        while path[-1] != v:
            path.append(next(y for y in nbrs[path[-1]] if D[y, v] == D[path[-1], v] - 1))
        return np.asarray(path)

    sides = {(u, v): side(u, v) for u in range(n) for v in range(u + 1, n)}
    near = {k: D[:, s].min(axis=1) for k, s in sides.items()}
    best = 0
    for x, y, z in itertools.combinations(range(n), 3):
        tri = [(x, y), (x, z), (y, z)]
        for i in range(3):
            a, b = (tri[j] for j in range(3) if j != i)
            s = sides[tri[i]]
            best = max(best, int(np.minimum(near[a][s], near[b][s]).max()))
    return best
