"""Quasi-geodesic families, Morse-gauge probing and the stability/slimness audits.

Gauges are only ever estimated from below: N_hat(K, C) is the largest excursion
from gamma among the (K, C)-quasi-geodesics we actually generated and verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import InputError, ParameterError
from ..graph import GeodesicPath, UnitGraph, some_geodesic
from .contraction import _path

DENSE_LIMIT = 3000
FAMILIES = ("detour", "legs", "power")


class Distances:
    """Distance oracle: a dense matrix for small graphs, cached BFS rows otherwise."""

    def __init__(self, g: UnitGraph):
        self.g = g
        self.dense = g.distance_matrix() if g.vertex_count <= DENSE_LIMIT else None
        self._rows: dict[int, np.ndarray] = {}

    def row(self, v: int) -> np.ndarray:
        if self.dense is not None:
            return self.dense[v]
        r = self._rows.get(v)
        if r is None:
            if len(self._rows) > 4096:
                self._rows.clear()
            r = self._rows[v] = self.g.bfs(v)
        return r

    def block(self, verts: np.ndarray) -> np.ndarray:
        if self.dense is not None:
            return self.dense[np.ix_(verts, verts)]
        return np.stack([self.row(int(v))[verts] for v in verts])

    def geodesic(self, u: int, v: int) -> list[int]:
        return list(some_geodesic(self.g, u, v, self.row(v)).vertices)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x).limit_denominator(10 ** 6)


def satisfies_qg(vertices, block: np.ndarray, K, C) -> bool:
    """|i - j| <= K (d(p_i, p_j) + C) for all i, j; the upper inequality holds for
    any unit-speed path once K >= 1."""
    K = _frac(K)
    C = _frac(C)
    m = len(vertices)
    idx = np.arange(m)
    gap = np.abs(idx[:, None] - idx[None, :])
    q = K.denominator * C.denominator
    lhs = gap * q
    rhs = K.numerator * (block * C.denominator + C.numerator)
    return bool((lhs <= rhs).all())


def verify_quasi_geodesic(g: UnitGraph, vertices, K, C, dist: Distances | None = None) -> bool:
    verts = np.asarray([int(v) for v in vertices], np.int64)
    if verts.size == 0:
        return False
    if _frac(K) < 1 or _frac(C) < 0:
        raise ParameterError("need K >= 1 and C >= 0")
    for a, b in zip(verts, verts[1:]):
        if not g.has_edge(int(a), int(b)):
            return False
    dist = dist or Distances(g)
    return satisfies_qg(verts, dist.block(verts), K, C)


@dataclass(frozen=True)
class QuasiGeodesic:
    vertices: tuple[int, ...]
    K: Fraction
    C: Fraction
    family: str
    meta: tuple = ()

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass
class FamilyResult:
    paths: list[QuasiGeodesic]
    census: dict[str, dict[str, int]]


def _endpoint_pairs(n: int, rng, cap: int) -> list[tuple[int, int]]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if len(pairs) > cap:
        keep = np.sort(rng.choice(len(pairs), size=cap, replace=False))
        pairs = [pairs[k] for k in keep]
    return pairs


def _candidates(g: UnitGraph, gamma: GeodesicPath, dist: Distances, budget: int, seed: int,
                families, power: list[int] | None):
    """Unverified candidate paths per family, deterministic in seed."""
    rng = np.random.default_rng([seed, 11])
    gv = list(gamma.vertices)
    n = g.vertex_count
    out: dict[str, list[list[int]]] = {f: [] for f in families}
    if "detour" in families:
        pairs = _endpoint_pairs(len(gv), rng, 64)
        per_pair = max(1, budget // max(1, len(pairs)))
        for i, j in pairs:
            ws = np.arange(n) if per_pair >= n else np.sort(rng.choice(n, size=per_pair, replace=False))
            for w in ws.tolist():
                first = dist.geodesic(w, gv[i])[::-1]
                second = dist.geodesic(w, gv[j])
                out["detour"].append(first + second[1:])
    if "legs" in families:
        for t in range(budget):
            i, j = sorted(rng.choice(len(gv), size=2, replace=len(gv) < 2).tolist())
            k = int(rng.integers(1, 4))
            ws = rng.integers(0, n, size=k).tolist()
            stops = [gv[i]] + ws + [gv[j]]
            path = [gv[i]]
            for a, b in zip(stops, stops[1:]):
                path += dist.geodesic(a, b)[1:]
            out["legs"].append(path)
    if "power" in families and power:
        path = [power[0]]
        for a, b in zip(power, power[1:]):
            path += dist.geodesic(a, b)[1:]
        out["power"].append(path)
    return out


def quasi_geodesic_families(g: UnitGraph, gamma, K, C, budget: int = 2000, seed: int = 0, *,
                            families=("detour", "legs"), power: list[int] | None = None,
                            dist: Distances | None = None) -> FamilyResult:
    """Generated (K, C)-quasi-geodesics, each verified before it is returned.

    Families: ``detour`` (geodesic to a waypoint and on to gamma), ``legs``
    (up to four geodesic legs through random waypoints) and ``power`` (the
    concatenation of geodesics through the supplied vertices, e.g. h^i).
    Detours and legs have both endpoints on gamma; a power path is kept only
    if it verifies.
    """
    gamma = _path(gamma)
    K, C = _frac(K), _frac(C)
    if K < 1 or C < 0:
        raise ParameterError("need K >= 1 and C >= 0")
    dist = dist or Distances(g)
    cands = _candidates(g, gamma, dist, budget, seed, families, power)
    paths, census = [], {}
    for fam, items in cands.items():
        ok = 0
        seen = set()
        for p in items:
            t = tuple(p)
            if t in seen:
                continue
            seen.add(t)
            arr = np.asarray(p, np.int64)
            if satisfies_qg(arr, dist.block(arr), K, C):
                paths.append(QuasiGeodesic(t, K, C, fam))
                ok += 1
        census[fam] = {"generated": len(seen), "verified": ok}
    return FamilyResult(paths, census)


def simple_paths_on(g: UnitGraph, gamma, caps: dict[tuple[int, int], int], dist: Distances,
                    budget: int):
    """All simple paths between gamma[i] and gamma[j] (i < j) of length <= caps[(i, j)].

    Yields (i, j, path). Stops after ``budget`` paths; the caller checks
    the returned counter for truncation.
    """
    gv = list(_path(gamma).vertices)
    count = 0
    for (i, j), cap in sorted(caps.items()):
        s, t = gv[i], gv[j]
        dt = dist.row(t)
        stack = [s]
        on = {s}
        iters = [iter(g.neighbors(s).tolist())]
        while iters:
            cur = stack[-1]
            if cur == t:
                count += 1
                if count > budget:
                    return
                yield i, j, list(stack)
                on.discard(stack.pop())
                iters.pop()
                continue
            nxt = next(iters[-1], None)
            if nxt is None:
                on.discard(stack.pop())
                iters.pop()
                continue
            if nxt in on or len(stack) + dt[nxt] > cap:
                continue
            stack.append(nxt)
            on.add(nxt)
            iters.append(iter(g.neighbors(nxt).tolist()))


@dataclass
class MorseGaugeTable:
    gamma: tuple[int, int]
    grid: list[tuple[Fraction, Fraction]]
    values: dict[tuple[Fraction, Fraction], int]
    witnesses: dict[tuple[Fraction, Fraction], tuple[int, ...]]
    tested_family_census: dict[str, dict[str, int]]
    saturated: dict[tuple[Fraction, Fraction], bool] = field(default_factory=dict)

    def value(self, K, C) -> int:
        key = (_frac(K), _frac(C))
        if key not in self.values:
            raise ParameterError(f"gauge table has no entry ({K}, {C})")
        return self.values[key]

    def lookup(self, K, C) -> tuple[tuple[Fraction, Fraction], int]:
        """The entry (K, C) itself or the smallest dominating one."""
        K, C = _frac(K), _frac(C)
        if (K, C) in self.values:
            return (K, C), self.values[(K, C)]
        dom = sorted(k for k in self.values if k[0] >= K and k[1] >= C)
        if not dom:
            raise ParameterError(f"gauge table has no entry dominating ({K}, {C})")
        return dom[0], self.values[dom[0]]

    def is_saturated(self, K, C) -> bool:
        return self.saturated.get((_frac(K), _frac(C)), False)

    def to_dict(self) -> dict:
        return {"gamma": list(self.gamma),
                "entries": [{"K": str(k[0]), "C": str(k[1]), "N_hat": self.values[k],
                             "saturated": self.saturated.get(k, False),
                             "witness": list(self.witnesses.get(k, ()))} for k in self.grid],
                "census": self.tested_family_census}


def morse_gauge_probe(g: UnitGraph, gamma, grid, budget: int = 2000, seed: int = 0, *,
                      families=("detour", "legs"), power: list[int] | None = None,
                      exhaustive: bool = False, path_budget: int = 2_000_000,
                      dist: Distances | None = None) -> MorseGaugeTable:
    """Lower bounds N_hat(K, C) on the Morse gauge of ``gamma``.

    With ``exhaustive=True`` every simple path between two vertices of gamma
    whose length is at most K (d + C) is enumerated as well; an entry is
    SATURATED when that enumeration finished within ``path_budget``.
    """
    gamma = _path(gamma)
    grid = [(_frac(K), _frac(C)) for K, C in grid]
    if not grid:
        raise InputError("grid must be non-empty")
    dist = dist or Distances(g)
    dgam = g.bfs(gamma.as_array())
    values = {k: 0 for k in grid}
    wits: dict = {k: None for k in grid}
    census: dict[str, dict[str, int]] = {}

    def consider(path: list[int], fam_counts: dict):
        arr = np.asarray(path, np.int64)
        block = dist.block(arr)
        exc = int(dgam[arr].max())
        hit = False
        for k in grid:
            if satisfies_qg(arr, block, *k):
                hit = True
                if wits[k] is None or exc > values[k]:
                    values[k] = exc
                    wits[k] = tuple(path)
        fam_counts["verified"] += int(hit)

    consider(list(gamma.vertices), {"verified": 0})
    cands = _candidates(g, gamma, dist, budget, seed, families, power)
    for fam, items in cands.items():
        counts = {"generated": 0, "verified": 0}
        for p in dict.fromkeys(tuple(x) for x in items):
            counts["generated"] += 1
            consider(list(p), counts)
        census[fam] = counts
    saturated = {k: False for k in grid}
    if exhaustive:
        gv = gamma.vertices
        caps = {}
        for i in range(len(gv)):
            for j in range(i + 1, len(gv)):
                d = j - i
                caps[(i, j)] = max(int(np.floor(K * (d + C))) for K, C in grid)
        counts = {"generated": 0, "verified": 0}
        for _, _, p in simple_paths_on(g, gamma, caps, dist, path_budget):
            counts["generated"] += 1
            consider(p, counts)
        truncated = counts["generated"] >= path_budget
        counts["truncated"] = int(truncated)
        census["exhaustive"] = counts
        saturated = {k: not truncated for k in grid}
    return MorseGaugeTable(gamma=(gamma.start, gamma.end), grid=grid, values=values, witnesses=wits,
                           tested_family_census=census, saturated=saturated)


@dataclass(frozen=True)
class AuditRecord:
    passed: bool
    measured: int
    bound: float
    detail: dict

    def to_dict(self) -> dict:
        return {"passed": self.passed, "measured": self.measured, "bound": self.bound, **self.detail}


def verify_stability_bound(g: UnitGraph, gamma, gauge: MorseGaugeTable, beta, lam, eps,
                           dist: Distances | None = None) -> AuditRecord:
    """Hausdorff(beta, gamma) <= 2 N_hat(lam, eps') + (lam + eps) with eps' = 2 (lam + eps).

    The continuous-path form 2 N_hat(lam, eps) is reported alongside when the
    table has that entry. A failure means N_hat is not yet saturated; it can
    never refute the underlying inequality, because N_hat is a lower bound.
    """
    gamma = _path(gamma)
    beta = _path(beta)
    lam, eps = _frac(lam), _frac(eps)
    if {beta.start, beta.end} != {gamma.start, gamma.end}:
        raise InputError("beta and gamma must share endpoints")
    eps_p = 2 * (lam + eps)
    key, n_eps_p = gauge.lookup(lam, eps_p)
    dist = dist or Distances(g)
    bv, gv = beta.as_array(), gamma.as_array()
    if dist.dense is not None:
        cross = dist.dense[np.ix_(bv, gv)]
    else:
        cross = np.stack([dist.row(int(v))[gv] for v in bv])
    haus = int(max(cross.min(axis=1).max(), cross.min(axis=0).max()))
    bound = 2 * n_eps_p + lam + eps
    cont = None
    if (lam, eps) in gauge.values:
        cont = 2 * gauge.values[(lam, eps)]
    return AuditRecord(passed=haus <= bound, measured=haus, bound=float(bound), detail={
        "form": "2N(lam,eps')+(lam+eps)", "gauge_entry": [str(key[0]), str(key[1])],
        "saturated": gauge.saturated.get(key, False),
        "continuous_form_bound": cont, "continuous_form_holds": None if cont is None else haus <= cont})


def triangle_slimness_sides(g: UnitGraph, sides, dist: Distances | None = None) -> tuple[int, int]:
    """Slimness of a triangle given by three vertex sequences; returns (value, vertex)."""
    dist = dist or Distances(g)
    arrs = [np.asarray(s, np.int64) for s in sides]
    if dist.dense is not None:
        near = [dist.dense[:, a].min(axis=1) for a in arrs]
    else:
        near = [g.bfs(a) for a in arrs]
    best, arg = 0, int(arrs[0][0])
    for i in range(3):
        o = [near[j] for j in range(3) if j != i]
        m = np.minimum(o[0][arrs[i]], o[1][arrs[i]])
        k = int(np.argmax(m))
        if m[k] > best:
            best, arg = int(m[k]), int(arrs[i][k])
    return best, arg


def slim_check_morse_pair(g: UnitGraph, p: int, alpha1, alpha2, gauge_common,
                          dist: Distances | None = None) -> AuditRecord:
    """Slimness of alpha1 u alpha2 u [alpha1(end), alpha2(end)] against 4 N_hat(3, 0)."""
    a1, a2 = _path(alpha1), _path(alpha2)
    if a1.start != p or a2.start != p:
        raise InputError("both geodesics must start at p")
    n3 = gauge_common.value(3, 0) if hasattr(gauge_common, "value") else gauge_common
    dist = dist or Distances(g)
    u, v = sorted((a1.end, a2.end))
    third = dist.geodesic(u, v)
    s, w = triangle_slimness_sides(g, [a1.vertices, a2.vertices, third], dist)
    bound = 4 * n3
    return AuditRecord(passed=s <= bound, measured=s, bound=float(bound),
                       detail={"N3": float(n3), "witness_vertex": w, "third_side_length": len(third) - 1})
