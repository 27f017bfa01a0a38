"""Gromov hyperbolicity estimates: four-point defect and slim canonical triangles.

Exhaustive four-point mode splits the graph into biconnected blocks first: the
four-point constant of a graph is attained inside a single block, so the cap
applies per block and trees cost nothing. Canonical-triangle slimness is not
block-local in general (a side's orientation inside a block depends on the
global endpoints), so exhaustive slim mode works on the whole graph when it is
within the cap and falls back to blocks, flagged, when it is not.

Sampled mode draws a seeded pool of vertices, computes their exact distance
rows by BFS, and evaluates quadruples (triples) drawn from the pool. Batches
use independent generators keyed by ``(seed, batch_index)``, so a larger
budget only appends quadruples and the estimate is monotone in the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
import numpy as np

from . import _kernels
from .errors import InputError, ResourceError
from .graph import UnitGraph, some_geodesic

EXHAUSTIVE_CAP = 400
DEFAULT_BUDGET = 1_000_000
DEFAULT_POOL = 64
DEFAULT_SLIM_POOL = 24
BATCH = 1 << 16
PLATEAU, GROWING, INCONCLUSIVE = "PLATEAU", "GROWING", "INCONCLUSIVE"


@dataclass
class DeltaReport:
    mode: str
    seed: int | None = None
    sample_count: int = 0
    delta_four_point: float | None = None
    delta_slim: int | None = None
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "seed": self.seed, "sample_count": self.sample_count,
                "delta_four_point": self.delta_four_point, "delta_slim": self.delta_slim,
                "witness": self.witness}


def blocks(g: UnitGraph) -> list[np.ndarray]:
    """Vertex sets of the biconnected components with at least four vertices."""
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(map(tuple, g.edges().tolist()))
    out = [np.asarray(sorted(c), np.int64) for c in nx.biconnected_components(G) if len(c) >= 4]
    out.sort(key=lambda a: (-a.shape[0], int(a[0])))
    return out


def _check_mode(mode: str) -> None:
    if mode not in ("exhaustive", "sampled"):
        raise InputError(f"mode must be 'exhaustive' or 'sampled', not {mode!r}")


def _block_graphs(g: UnitGraph, cap: int):
    for b in blocks(g):
        if b.shape[0] > cap:
            raise ResourceError(
                f"block of {b.shape[0]} vertices exceeds the exhaustive cap {cap}; use sampled mode",
                needed=int(b.shape[0]), budget=cap)
        sub, keep = g.subgraph(b)
        yield sub, keep


def four_point_defect(g: UnitGraph, quad) -> int:
    """Twice the four-point delta of one quadruple, recomputed from scratch."""
    q = [g.check_vertex(v) for v in quad]
    D = g.distance_matrix(q, q)
    return int(_kernels.four_point_quads(D, np.arange(4, dtype=np.int64).reshape(1, 4))[0])


def _pool(g: UnitGraph, size: int, seed: int, salt: int) -> np.ndarray:
    n = g.vertex_count
    if size >= n:
        return np.arange(n, dtype=np.int64)
    rng = np.random.default_rng([seed, salt])
    return np.sort(rng.choice(n, size=size, replace=False)).astype(np.int64)


def _sampled_rows(n_pool: int, width: int, budget: int, seed: int, salt: int):
    done = 0
    b = 0
    while done < budget:
        m = min(BATCH, budget - done)
        rng = np.random.default_rng([seed, salt, b])
        yield rng.integers(0, n_pool, size=(BATCH, width))[:m]
        done += m
        b += 1


def four_point_delta(g: UnitGraph, mode: str = "exhaustive", budget: int = DEFAULT_BUDGET,
                     seed: int = 0, *, cap: int = EXHAUSTIVE_CAP, pool_size: int = DEFAULT_POOL) -> DeltaReport:
    _check_mode(mode)
    if mode == "exhaustive":
        best, wit, count = 0, [], 0
        for sub, keep in _block_graphs(g, cap):
            D = sub.distance_matrix()
            val, i, j, k, l = _kernels.four_point_exhaustive(D)
            count += math.comb(sub.vertex_count, 4)
            if val > best:
                best, wit = int(val), [int(keep[x]) for x in (i, j, k, l)]
        if not wit:
            wit = [int(v) for v in range(min(4, g.vertex_count))]
        return DeltaReport(mode="exhaustive", seed=None, sample_count=count, delta_four_point=best / 2,
                           witness={"quadruple": wit, "defect": best})
    if budget < 1:
        raise InputError("budget must be >= 1")
    pool = _pool(g, pool_size, seed, 0)
    D = g.distance_matrix(pool, pool)
    best, wit = 0, [int(v) for v in pool[:4]]
    for quads in _sampled_rows(pool.shape[0], 4, budget, seed, 1):
        vals = _kernels.four_point_quads(D, quads)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, wit = int(vals[k]), [int(pool[x]) for x in quads[k]]
    return DeltaReport(mode="sampled", seed=seed, sample_count=budget, delta_four_point=best / 2,
                       witness={"quadruple": wit, "defect": best, "pool_size": int(pool.shape[0])})


def triangle_slimness(g: UnitGraph, triple) -> int:
    """Slimness of the canonical triangle on three vertices.

    Each side is the canonical geodesic from the smaller to the larger id.
    """
    a, b, c = sorted(g.check_vertex(v) for v in triple)
    sides = [some_geodesic(g, a, b).as_array(), some_geodesic(g, a, c).as_array(),
             some_geodesic(g, b, c).as_array()]
    dist = [g.bfs(s) for s in sides]
    worst = 0
    for i in range(3):
        o1, o2 = [dist[j] for j in range(3) if j != i]
        worst = max(worst, int(np.minimum(o1[sides[i]], o2[sides[i]]).max()))
    return worst


def slim_triangle_delta(g: UnitGraph, mode: str = "exhaustive", budget: int = 20_000, seed: int = 0,
                        *, cap: int = EXHAUSTIVE_CAP, pool_size: int = DEFAULT_SLIM_POOL) -> DeltaReport:
    """Worst slimness of canonical geodesic triangles (least-id greedy sides)."""
    _check_mode(mode)
    if mode == "exhaustive":
        best, wit, count = 0, [], 0
        whole = g.vertex_count <= cap
        parts = [(g, np.arange(g.vertex_count, dtype=np.int64))] if whole else _block_graphs(g, cap)
        for sub, keep in parts:
            if sub.vertex_count < 3:
                continue
            D = sub.distance_matrix()
            flat, offsets = _kernels.canonical_paths(D, sub.indptr, sub.indices)
            table = _kernels.path_distance_table(D, flat, offsets)
            val, i, j, k, v = _kernels.slim_exhaustive(D, flat, offsets, table)
            count += math.comb(sub.vertex_count, 3)
            if val > best:
                best = int(val)
                wit = [int(keep[i]), int(keep[j]), int(keep[k]), int(keep[v])]
        witness = {"triple": wit[:3], "vertex": wit[3], "slimness": best} if wit else {"slimness": 0}
        witness["block_decomposed"] = not whole
        return DeltaReport(mode="exhaustive", sample_count=count, delta_slim=best, witness=witness)
    if budget < 1:
        raise InputError("budget must be >= 1")
    pool = _pool(g, pool_size, seed, 2)
    P = pool.shape[0]
    rows = {int(v): g.bfs(int(v)) for v in pool}
    pairs = list(combinations(range(P), 2))
    index = {pr: i for i, pr in enumerate(pairs)}
    paths = [some_geodesic(g, int(pool[i]), int(pool[j]), rows[int(pool[j])]).as_array()
             for i, j in pairs]
    union, inv = np.unique(np.concatenate(paths), return_inverse=True)
    local = np.split(inv, np.cumsum([p.shape[0] for p in paths])[:-1])
    table = np.empty((len(paths), union.shape[0]), np.int32)
    for p, path in enumerate(paths):
        table[p] = g.bfs(path)[union]
    best, wit, count = 0, {"slimness": 0}, 0
    all_triples = math.comb(P, 3)
    if budget >= all_triples:
        batches = [np.asarray(list(combinations(range(P), 3)), np.int64).reshape(-1, 3)]
    else:
        batches = (np.sort(t, axis=1) for t in _sampled_rows(P, 3, budget, seed, 3))
    for triples in batches:
        for i, j, k in triples.tolist():
            if i == j or j == k:
                count += 1
                continue
            ps = (index[(i, j)], index[(i, k)], index[(j, k)])
            for s in range(3):
                o1, o2 = [ps[t] for t in range(3) if t != s]
                side = local[ps[s]]
                m = np.minimum(table[o1, side], table[o2, side])
                a = int(np.argmax(m))
                if m[a] > best:
                    best = int(m[a])
                    wit = {"triple": [int(pool[i]), int(pool[j]), int(pool[k])],
                           "vertex": int(union[side[a]]), "slimness": best}
            count += 1
    wit["pool_size"] = int(P)
    return DeltaReport(mode="sampled", seed=seed, sample_count=count, delta_slim=best, witness=wit)


def delta_report(g: UnitGraph, mode: str = "exhaustive", budget: int = DEFAULT_BUDGET, seed: int = 0,
                 *, cap: int = EXHAUSTIVE_CAP, slim_budget: int = 20_000) -> DeltaReport:
    """Both estimates in one report."""
    fp = four_point_delta(g, mode, budget, seed, cap=cap)
    sl = slim_triangle_delta(g, mode, slim_budget, seed, cap=cap)
    return DeltaReport(mode=mode, seed=fp.seed, sample_count=fp.sample_count,
                       delta_four_point=fp.delta_four_point, delta_slim=sl.delta_slim,
                       witness={"four_point": fp.witness, "slim": sl.witness})


@dataclass(frozen=True)
class PlateauVerdict:
    verdict: str
    last_three: tuple
    spread: float
    steps: tuple

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "last_three": list(self.last_three),
                "spread": self.spread, "steps": list(self.steps)}


def plateau_audit(series) -> PlateauVerdict:
    """PLATEAU if the last three deltas pairwise differ by at most 1; GROWING if
    they increase by at least 1 per step; INCONCLUSIVE otherwise."""
    pts = [(s, d) for s, d in series]
    if len(pts) < 3:
        raise InputError("plateau audit needs at least three (size, delta) entries")
    sizes = [s for s, _ in pts]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    last = tuple(d for _, d in pts[-3:])
    spread = max(last) - min(last)
    steps = (last[1] - last[0], last[2] - last[1])
    if spread <= 1:
        verdict = PLATEAU
    elif all(s >= 1 for s in steps):
        verdict = GROWING
    else:
        verdict = INCONCLUSIVE
    return PlateauVerdict(verdict, last, spread, steps)
