"""Closest-point projections, contraction profiles and the fellow-travelling tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import _kernels
from ..errors import InputError, ParameterError, ResourceError
from ..graph import GeodesicPath, UnitGraph, _as_vertex_set

SUBLINEAR, LINEAR, INCONCLUSIVE = "SUBLINEAR-CONSISTENT", "LINEAR-CONSISTENT", "INCONCLUSIVE"
LINEAR_SLACK = 4
DEFAULT_WORK_BUDGET = 2_000_000_000


def _path(gamma) -> GeodesicPath:
    if isinstance(gamma, GeodesicPath):
        return gamma
    return GeodesicPath(tuple(int(v) for v in gamma))


def _paths(gammas) -> list[GeodesicPath]:
    """One path (GeodesicPath or vertex sequence) or a list of them."""
    if isinstance(gammas, GeodesicPath):
        return [gammas]
    items = list(gammas)
    if items and isinstance(items[0], (int, np.integer)):
        return [_path(items)]
    return [_path(gm) for gm in items]


@dataclass(frozen=True)
class ProjectionResult:
    target: tuple[int, int]
    point: int
    projection: np.ndarray
    positions: np.ndarray
    dist_to_path: int

    @property
    def diameter(self) -> int:
        return int(self.positions.max() - self.positions.min())


def project(g: UnitGraph, gamma, x: int) -> ProjectionResult:
    """Nearest points of ``gamma`` to ``x`` (positions are indices along gamma)."""
    gamma = _path(gamma)
    x = g.check_vertex(x)
    verts = gamma.as_array()
    d = g.bfs(x)[verts]
    m = int(d.min())
    pos = np.flatnonzero(d == m)
    return ProjectionResult(target=(gamma.start, gamma.end), point=x, projection=np.unique(verts[pos]),
                            positions=pos, dist_to_path=m)


def _check_geodesic(g: UnitGraph, gamma: GeodesicPath) -> None:
    verts = gamma.as_array()
    if len(verts) == 0:
        raise InputError("empty path")
    for a, b in zip(verts, verts[1:]):
        if not g.has_edge(int(a), int(b)):
            raise InputError("gamma is not a path in the graph")
    if int(g.bfs(int(verts[0]), maxdist=len(verts))[verts[-1]]) != len(verts) - 1:
        raise InputError("gamma is not a geodesic")


@dataclass
class ContractionProfile:
    """rho_hat[r] = worst projection diameter over qualifying pairs with d(x, gamma) <= r."""

    rho_hat: list[int]
    per_scale: list[int]
    pair_witnesses: list[dict | None]
    gamma_count: int
    region_size: int
    sampled: bool = False
    touches_uncertified: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def support(self) -> int:
        return len(self.rho_hat) - 1

    def __getitem__(self, r: int) -> int:
        return self.rho_hat[r]

    def to_dict(self) -> dict:
        return {"rho_hat": list(self.rho_hat), "per_scale": list(self.per_scale), "support": self.support,
                "pair_witnesses": self.pair_witnesses, "gamma_count": self.gamma_count,
                "region_size": self.region_size, "sampled": self.sampled,
                "touches_uncertified": self.touches_uncertified, **self.meta}

    @classmethod
    def from_values(cls, values) -> "ContractionProfile":
        """Synthetic profile from a sequence indexed by r = 0, 1, ..."""
        vals = [int(v) for v in values]
        cum = list(np.maximum.accumulate(vals)) if vals else []
        return cls(rho_hat=[int(v) for v in cum], per_scale=vals, pair_witnesses=[None] * len(vals),
                   gamma_count=0, region_size=0)


def contraction_profile(g: UnitGraph, gammas, region=None, *, max_r: int | None = None,
                        certified: np.ndarray | None = None,
                        work_budget: int = DEFAULT_WORK_BUDGET) -> ContractionProfile:
    """Empirical contraction function of one or several geodesics.

    Pairs (x, y) of region vertices qualify when d(x, y) <= d(x, gamma); the
    diameter of pi(x) u pi(y) is bucketed under r = d(x, gamma). With several
    geodesics (representatives of one direction) the supremum runs over all.
    """
    paths = _paths(gammas)
    if not paths:
        raise InputError("at least one geodesic is required")
    n = g.vertex_count
    if region is None:
        in_region = np.ones(n, bool)
    else:
        reg = _as_vertex_set(g, region)
        in_region = np.zeros(n, bool)
        in_region[reg] = True
    size = int(in_region.sum())
    per_r: dict[int, tuple[int, dict]] = {}
    top = 0
    for gi, gm in enumerate(paths):
        _check_geodesic(g, gm)
        verts = gm.as_array()
        dgam, lo, hi = _kernels.projection_spans(g.indptr, g.indices, verts)
        reach = dgam[in_region]
        rmax = int(reach.max()) if max_r is None else min(int(reach.max()), int(max_r))
        work = (rmax + 1) * (n + g.indices.shape[0]) + len(verts) * (n + g.indices.shape[0])
        if work > work_budget:
            raise ResourceError(f"profile needs ~{work} steps (budget {work_budget})",
                                needed=work, budget=work_budget)
        best, wit = _kernels.contraction_filters(g.indptr, g.indices, in_region, dgam, lo, hi, rmax)
        top = max(top, rmax)
        for r in range(rmax + 1):
            xs = np.flatnonzero(in_region & (dgam == r))
            if xs.size == 0:
                continue
            k = int(np.argmax(best[xs]))
            x = int(xs[k])
            val = int(best[x])
            if r not in per_r or val > per_r[r][0]:
                per_r[r] = (val, {"x": x, "y": int(wit[x]), "gamma": gi, "diameter": val})
    per_scale = [per_r[r][0] if r in per_r else 0 for r in range(top + 1)]
    witnesses = [per_r[r][1] if r in per_r else None for r in range(top + 1)]
    rho = [int(v) for v in np.maximum.accumulate(per_scale)]
    touches = False
    if certified is not None:
        cert = np.asarray(certified, bool)
        touches = bool((in_region & ~cert).any()) or any(not cert[gm.as_array()].all() for gm in paths)
    return ContractionProfile(rho_hat=rho, per_scale=per_scale, pair_witnesses=witnesses,
                              gamma_count=len(paths), region_size=size, touches_uncertified=touches)


def pair_diameter(g: UnitGraph, gamma, x: int, y: int) -> int:
    """diam(pi(x) u pi(y)) recomputed from scratch (witness replay)."""
    px = project(g, gamma, x)
    py = project(g, gamma, y)
    pos = np.concatenate([px.positions, py.positions])
    return int(pos.max() - pos.min())


def brute_force_profile(g: UnitGraph, gamma, region=None) -> list[int]:
    """Quadratic reference implementation (tests only)."""
    gamma = _path(gamma)
    verts = gamma.as_array()
    reg = np.arange(g.vertex_count) if region is None else _as_vertex_set(g, region)
    D = g.distance_matrix(reg, np.concatenate([reg, verts]))
    DR, DG = D[:, :reg.shape[0]], D[:, reg.shape[0]:]
    dg = DG.min(axis=1)
    lo = np.array([np.flatnonzero(DG[i] == dg[i]).min() for i in range(len(reg))])
    hi = np.array([np.flatnonzero(DG[i] == dg[i]).max() for i in range(len(reg))])
    out = [0] * (int(dg.max()) + 1)
    for i in range(len(reg)):
        for j in range(len(reg)):
            if DR[i, j] <= dg[i]:
                out[dg[i]] = max(out[dg[i]], int(max(hi[i], hi[j]) - min(lo[i], lo[j])))
    return [int(v) for v in np.maximum.accumulate(out)]


@dataclass(frozen=True)
class TrendVerdict:
    verdict: str
    window: int
    slope: float
    top_mean_ratio: float
    bottom_mean_ratio: float
    linear_slack_needed: int
    rule: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def sublinearity_trend(profile: ContractionProfile | list, window: int) -> TrendVerdict:
    """Finite-scale sublinearity verdict.

    SUBLINEAR-CONSISTENT when the mean of rho/r over the top ``window`` scales is
    at most half the mean over the bottom ``window`` scales (r >= 1);
    LINEAR-CONSISTENT when rho(r) >= r - c on the top window with c <= 4;
    INCONCLUSIVE otherwise. Also reports the least-squares slope of rho/r on the
    top window.
    """
    rho = profile.rho_hat if isinstance(profile, ContractionProfile) else [int(v) for v in profile]
    support = len(rho) - 1
    if window < 1:
        raise InputError("window must be >= 1")
    if support < 2 * window:
        raise InputError(f"support {support} is below twice the window ({window})")
    top = np.arange(support - window + 1, support + 1)
    bottom = np.arange(1, window + 1)
    arr = np.asarray(rho, float)
    top_ratio = arr[top] / top
    bottom_ratio = arr[bottom] / bottom
    slope = float(np.polyfit(top.astype(float), top_ratio, 1)[0]) if window >= 2 else 0.0
    c_needed = int(max(int(r) - rho[int(r)] for r in top))
    tm, bm = float(top_ratio.mean()), float(bottom_ratio.mean())
    if tm <= 0.5 * bm:
        verdict = SUBLINEAR
    elif c_needed <= LINEAR_SLACK:
        verdict = LINEAR
    else:
        verdict = INCONCLUSIVE
    rule = ("SUBLINEAR-CONSISTENT if mean(rho/r, top window) <= 0.5*mean(rho/r, bottom window, r>=1); "
            f"else LINEAR-CONSISTENT if rho(r) >= r - c on the top window for some c <= {LINEAR_SLACK}; "
            "else INCONCLUSIVE")
    return TrendVerdict(verdict, int(window), round(slope, 12), round(tm, 12), round(bm, 12), c_needed, rule)


@dataclass(frozen=True)
class FqParams:
    L: Fraction
    A: Fraction
    k_value: Fraction
    inf_clause: Fraction
    unresolved: bool
    r: int | None = None

    def to_dict(self) -> dict:
        return {"L": str(self.L), "A": str(self.A), "k_value": str(self.k_value),
                "inf_clause": str(self.inf_clause), "unresolved": self.unresolved, "r": self.r}


def k_of(profile: ContractionProfile | list, L, A) -> FqParams:
    """k = max{3A, 3L^2, 1 + inf{R > 0 : 3L^2 rho(r) <= r for all r >= R}}, exactly.

    The inf clause is scanned over integer scales 1..support: it is 0 when the
    inequality holds at every measured scale, otherwise the least integer R
    from which it holds to the end of the support. If it fails at the last
    measured scale the tail is never reached: the clause is set to
    support + 1 and ``unresolved`` is raised.
    """
    rho = profile.rho_hat if isinstance(profile, ContractionProfile) else [int(v) for v in profile]
    if not rho:
        raise InputError("profile is empty")
    L = Fraction(L)
    A = Fraction(A)
    if L < 1 or A < 0:
        raise ParameterError("need L >= 1 and A >= 0")
    c = 3 * L * L
    support = len(rho) - 1
    bad = [r for r in range(1, support + 1) if c * rho[r] > r]
    unresolved = False
    if not bad:
        R = Fraction(0)
    elif bad[-1] == support:
        R = Fraction(support + 1)
        unresolved = True
    else:
        R = Fraction(bad[-1] + 1)
    k = max(3 * A, c, 1 + R)
    return FqParams(L=L, A=A, k_value=k, inf_clause=R, unresolved=unresolved)


@dataclass(frozen=True)
class NeighborTest:
    passed: bool
    measured: float
    threshold: float
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "measured": self.measured, "threshold": self.threshold, **self.detail}


def fq_neighbor_test(g: UnitGraph, o: int, alpha, r: int, beta, L, A, profile) -> NeighborTest:
    """Is beta within k(rho, L, A) of the part of alpha outside the open r-ball at o?"""
    alpha = _path(alpha)
    beta = _path(beta)
    o = g.check_vertex(o)
    if beta.start != o:
        raise InputError("beta must start at o")
    do = g.bfs(o)
    av = alpha.as_array()
    tail = av[do[av] >= r]
    if tail.size == 0:
        raise InputError(f"alpha has no vertex at distance >= {r} from o in this graph")
    params = k_of(profile, L, A)
    d = int(g.bfs(beta.as_array())[tail].min())
    return NeighborTest(passed=Fraction(d) <= params.k_value, measured=d, threshold=float(params.k_value),
                        detail={"k": params.to_dict(), "tail_size": int(tail.size)})


def dl_neighbor_test(g: UnitGraph, p: int, alpha, n: int, gamma, deltaN: float, gauge) -> NeighborTest:
    """d(alpha(t), gamma(t)) < deltaN for t = 0..n-1, with deltaN checked against 4*N(3,0).

    ``gauge`` is a :class:`MorseGaugeTable` containing (3, 0) or the number N(3,0).
    """
    alpha = _path(alpha)
    gamma = _path(gamma)
    n3 = gauge.value(3, 0) if hasattr(gauge, "value") else float(gauge)
    if not deltaN > 4 * n3:
        raise ParameterError(f"deltaN={deltaN} must exceed 4*N(3,0)={4 * n3}")
    if alpha.start != p or gamma.start != p:
        raise InputError("alpha and gamma must start at p")
    if n < 1 or len(alpha) < n or len(gamma) < n:
        raise InputError(f"both paths need at least {n} vertices")
    worst, at = 0, 0
    for t in range(n):
        a, b = alpha.vertices[t], gamma.vertices[t]
        d = 0 if a == b else int(g.bfs(a)[b])
        if d > worst:
            worst, at = d, t
        if d >= deltaN:
            return NeighborTest(False, d, deltaN, {"first_failure": t})
    return NeighborTest(True, worst, deltaN, {"worst_t": at})


def profile_scales(profile: ContractionProfile) -> list[int]:
    return list(range(profile.support + 1))


def ceil_sqrt_profile(support: int) -> ContractionProfile:
    """The synthetic profile r -> ceil(sqrt(r))."""
    return ContractionProfile.from_values([math.isqrt(r - 1) + 1 if r > 0 else 0 for r in range(support + 1)])
