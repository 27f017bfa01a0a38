from __future__ import annotations

import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.cusped import build_cusped_ball
from cuspidal.errors import InputError, ParameterError
from cuspidal.graph import GeodesicPath, ball, some_geodesic
from cuspidal.groups import FreeAbelianGroup, FreeGroup, cayley_ball
from cuspidal.morse import (LINEAR, SUBLINEAR, ContractionProfile, contracting_directions, contraction_profile,
                            dl_neighbor_test, fq_neighbor_test, hull_coverage_audit, k_of, morse_gauge_probe,
                            pair_diameter, power_path_distortion, project, slim_audit, stability_audit,
                            stable_set_proxy, sublinearity_trend, verify_quasi_geodesic,
                            vertical_ray_contraction_audit, weak_hull)

from conftest import connected_graphs, from_nx, oracle_distances, path_graph, to_nx


def oracle_profile(g, gamma, region=None):
    """rho_hat straight from the definition, on a pure-Python distance table."""
    D = oracle_distances(g)
    reg = list(range(g.vertex_count)) if region is None else sorted(int(v) for v in region)
    gam = list(gamma)
    proj = {}
    for x in reg:
        m = min(D[x, p] for p in gam)
        proj[x] = (m, [i for i, p in enumerate(gam) if D[x, p] == m])
    out = [0] * (max(m for m, _ in proj.values()) + 1)
    for x in reg:
        m, px = proj[x]
        for y in reg:
            if D[x, y] <= m:
                pos = px + proj[y][1]
                out[m] = max(out[m], max(pos) - min(pos))
    for r in range(1, len(out)):
        out[r] = max(out[r], out[r - 1])
    return out


def axis(b, k):
    F = b.model
    return GeodesicPath(tuple(b.vertex_of(F.power((1,), i)) for i in range(-k, k + 1)))


# projections ---------------------------------------------------------------

def test_project_on_path():
    g = path_graph(7)
    res = project(g, (0, 1, 2, 3), 6)
    assert res.projection.tolist() == [3] and res.dist_to_path == 3 and res.diameter == 0


def test_project_cycle_two_nearest():
    g = nx.cycle_graph(6)
    ug, _ = from_nx(g)
    res = project(ug, (0, 1, 2), 4)
    assert sorted(res.projection.tolist()) == [0, 2] and res.dist_to_path == 2 and res.diameter == 2
    res = project(ug, (5, 0, 1), 3)
    assert sorted(res.projection.tolist()) == [1, 5] and res.diameter == 2


# contraction profiles -------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=11), st.data())
def test_profile_matches_definition(g, data):
    u = data.draw(st.integers(0, g.vertex_count - 1))
    v = data.draw(st.integers(0, g.vertex_count - 1))
    gamma = some_geodesic(g, u, v)
    prof = contraction_profile(g, gamma)
    assert prof.rho_hat == oracle_profile(g, gamma.vertices)
    assert all(a <= b for a, b in zip(prof.rho_hat, prof.rho_hat[1:]))
    for r, w in enumerate(prof.pair_witnesses):
        if w is not None:
            assert pair_diameter(g, gamma, w["x"], w["y"]) == prof.per_scale[r]


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=3, max_n=11), st.data())
def test_profile_monotone_in_region(g, data):
    u = data.draw(st.integers(0, g.vertex_count - 1))
    v = data.draw(st.integers(0, g.vertex_count - 1))
    sub = data.draw(st.sets(st.integers(0, g.vertex_count - 1), min_size=1))
    gamma = some_geodesic(g, u, v)
    small = contraction_profile(g, gamma, sorted(sub)).rho_hat
    big = contraction_profile(g, gamma).rho_hat
    assert small == oracle_profile(g, gamma.vertices, sub)
    for r, val in enumerate(small):
        assert val <= big[min(r, len(big) - 1)]


def test_tree_profile_is_zero():
    b = cayley_ball(FreeGroup(2), 6)
    assert set(contraction_profile(b.graph, axis(b, 4)).rho_hat) == {0}


def test_flat_axis_profile_is_linear():
    b = cayley_ball(FreeAbelianGroup(2), 12)
    prof = contraction_profile(b.graph, axis(b, 6))
    assert all(prof.rho_hat[r] >= r - 2 for r in range(7))


def test_profile_needs_geodesic():
    with pytest.raises(InputError):
        contraction_profile(path_graph(4), [])


# trend verdict and k ------------------------------------------------------------

def test_trend_examples():
    assert sublinearity_trend([0] * 17, 4).verdict == SUBLINEAR
    assert sublinearity_trend([max(r - 1, 0) for r in range(17)], 4).verdict == LINEAR
    sq = [math.isqrt(r - 1) + 1 if r else 0 for r in range(65)]
    assert sublinearity_trend(sq, 4).verdict == SUBLINEAR
    with pytest.raises(InputError):
        sublinearity_trend([0] * 7, 4)


@pytest.mark.parametrize("L,A,k", [(1, 0, 3), (2, 5, 15), (1, 2, 6), (Fraction(3, 2), 0, Fraction(27, 4))])
def test_k_zero_profile(L, A, k):
    assert k_of([0] * 10, L, A).k_value == k


def test_k_inf_clause():
    # 3 rho(r) <= r fails at r = 1, 2 and holds from 3 on
    p = k_of([0, 1, 1, 1, 1, 1, 1, 2], 1, 0)
    assert p.inf_clause == 3 and p.k_value == 4 and not p.unresolved
    q = k_of([max(r - 1, 0) for r in range(10)], 1, 0)
    assert q.unresolved and q.inf_clause == 10
    with pytest.raises(ParameterError):
        k_of([0, 0], Fraction(1, 2), 0)


def test_fq_neighbor():
    b = cayley_ball(FreeGroup(2), 6)
    F = b.model
    alpha = [b.vertex_of(F.power((1,), i)) for i in range(7)]
    beta = [b.vertex_of(F.power((2,), i)) for i in range(7)]
    zero = ContractionProfile.from_values([0] * 7)
    assert fq_neighbor_test(b.graph, b.origin, alpha, 2, beta, 1, 0, zero)
    res = fq_neighbor_test(b.graph, b.origin, alpha, 5, beta, 1, 0, zero)
    assert not res and res.measured == 5 and res.threshold == 3


def test_dl_neighbor_flat_axes():
    b = cayley_ball(FreeAbelianGroup(2), 8)
    F = b.model
    alpha = [b.vertex_of(F.power((1,), i)) for i in range(7)]
    gamma = [b.vertex_of(F.power((2,), i)) for i in range(7)]
    res = dl_neighbor_test(b.graph, b.origin, alpha, 6, gamma, 5, 1)
    assert not res and res.detail["first_failure"] == 3
    assert dl_neighbor_test(b.graph, b.origin, alpha, 6, alpha, 5, 1)
    with pytest.raises(ParameterError):
        dl_neighbor_test(b.graph, b.origin, alpha, 6, gamma, 4, 1)


# gauges and audits ------------------------------------------------------------

def test_tree_gauge_is_zero():
    b = cayley_ball(FreeGroup(2), 5)
    t = morse_gauge_probe(b.graph, axis(b, 3), [(1, 0), (2, 0), (3, 0)], budget=300, exhaustive=True)
    assert all(v == 0 for v in t.values.values())
    assert all(t.saturated.values())


def test_flat_gauge_positive():
    b = cayley_ball(FreeAbelianGroup(2), 5)
    t = morse_gauge_probe(b.graph, axis(b, 3), [(1, 0), (1, 2)], exhaustive=True)
    assert t.value(1, 0) == 0 and t.value(1, 2) >= 1


def test_verify_quasi_geodesic():
    b = cayley_ball(FreeAbelianGroup(2), 4)
    F = b.model
    geo = axis(b, 3).vertices
    assert verify_quasi_geodesic(b.graph, geo, 1, 0)
    up = b.vertex_of(F.parse("ab"))
    detour = (b.vertex_of(F.parse("")), b.vertex_of(F.parse("b")), up, b.vertex_of(F.parse("a")))
    assert not verify_quasi_geodesic(b.graph, detour, 1, 0)
    assert verify_quasi_geodesic(b.graph, detour, 1, 2)


def test_power_path_is_not_quasi_geodesic_with_cusps(f2_rel_a_8_6):
    cb = f2_rel_a_8_6
    F = cb.base_ball.model
    hw = [cb.base_ball.vertex_of(F.power((1,), i)) for i in range(9)]
    # eight level-0 steps against d(e, a^8) = 6 through the horoball
    assert int(cb.graph.bfs(hw[0])[hw[-1]]) == 6
    assert not verify_quasi_geodesic(cb.graph, hw, 1, 1)
    assert verify_quasi_geodesic(cb.graph, hw, 1, 2)
    assert verify_quasi_geodesic(cayley_ball(F, 8).graph, hw, 1, 0)


def test_stability_audit_tree_and_flat():
    b = cayley_ball(FreeGroup(2), 4)
    s = stability_audit(b.graph, axis(b, 3))
    assert s.violations == 0 and s.all_saturated and s.audited > 0
    z = cayley_ball(FreeAbelianGroup(2), 3)
    s = stability_audit(z.graph, axis(z, 2))
    assert s.violations == 0 and s.all_saturated


def test_slim_audit_tree():
    b = cayley_ball(FreeGroup(2), 4)
    s = slim_audit(b.graph, b.origin, [int(v) for v in np.flatnonzero(b.graph.bfs(b.origin) == 4)][:8])
    assert s.audited == 28 and s.violations == 0 and s.worst_margin == 0


# hulls and stable sets ----------------------------------------------------------

def test_tree_hull_is_segment():
    b = cayley_ball(FreeGroup(2), 5)
    F = b.model
    h = weak_hull(b.graph, b.origin, [b.vertex_of(F.power((1,), 3)), b.vertex_of(F.power((1,), -3))])
    assert sorted(h.hull_vertices.tolist()) == sorted(axis(b, 3).vertices)
    assert h.induced_graph.edge_count == 6


def test_flat_hull_is_rectangle():
    b = cayley_ball(FreeAbelianGroup(2), 6)
    F = b.model
    h = weak_hull(b.graph, b.origin, [b.vertex_of(F.parse("a^3")), b.vertex_of(F.parse("b^3"))])
    assert h.hull_vertices.shape[0] == 16


@settings(max_examples=30, deadline=None)
@given(connected_graphs(min_n=3, max_n=11), st.data())
def test_hull_monotone_and_exact(g, data):
    dirs = data.draw(st.lists(st.integers(0, g.vertex_count - 1), min_size=3, max_size=4, unique=True))
    small = set(weak_hull(g, 0, dirs[:2]).hull_vertices.tolist())
    big = set(weak_hull(g, 0, dirs).hull_vertices.tolist())
    assert small <= big
    D = oracle_distances(g)
    u, v = dirs[:2]
    assert small == {x for x in range(g.vertex_count) if D[u, x] + D[x, v] == D[u, v]}


def test_hull_needs_two_directions():
    with pytest.raises(InputError):
        weak_hull(path_graph(3), 0, [2, 2])


def test_coverage_without_directions():
    F = FreeAbelianGroup(2)
    cb = build_cusped_ball(cayley_ball(F, 12, [F.subgroup("B", ["b"])]), 6)
    dirs = contracting_directions(cb)
    assert dirs == []
    assert hull_coverage_audit(cb, None, 2)["status"] == "NO-DIRECTIONS"


def test_coverage_of_full_interval(f2_rel_a_8_6):
    cb = f2_rel_a_8_6
    F = cb.base_ball.model
    ends = [cb.base_ball.vertex_of(F.parse(w)) for w in ("b^3", "B^3")]
    h = weak_hull(cb.graph, cb.origin, ends)
    small = hull_coverage_audit(cb, h, 0)["all"]["fraction"]
    large = hull_coverage_audit(cb, h, 3)["all"]["fraction"]
    assert 0 < small <= large <= 1


def test_stable_set_tree_is_whole_ball():
    b = cayley_ball(FreeGroup(2), 4)
    s = stable_set_proxy(b.graph, b.origin, 0, 3)
    assert s["members"].shape[0] == s["ball_size"] == 53


def test_stable_set_flat_stays_near_origin():
    b = cayley_ball(FreeAbelianGroup(2), 10)
    s = stable_set_proxy(b.graph, b.origin, 2, 8)
    d = b.graph.bfs(b.origin)
    assert b.origin in s["members"].tolist()
    assert d[s["members"]].max() < 8
    assert s["members"].shape[0] < s["ball_size"] // 2


# cusped experiments ---------------------------------------------------------------

def test_vertical_audit_uniform(f2_rel_a_8_6):
    res = vertical_ray_contraction_audit(f2_rel_a_8_6, ["", "b"], 6)
    assert res["uniformity_gap"] == 0
    assert len(res["profiles"]) == 2
    with pytest.raises(InputError):
        vertical_ray_contraction_audit(f2_rel_a_8_6, [""], 6)


def test_power_distortion_against_networkx(f2_rel_a_8_6):
    cb = f2_rel_a_8_6
    res = power_path_distortion(cb, "a", 8)
    nxd = nx.single_source_shortest_path_length(to_nx(cb.graph), cb.origin)
    F = cb.base_ball.model
    assert res["distance"] == [nxd[cb.base_ball.vertex_of(F.power((1,), n))] for n in res["n"]]
    assert not res["truncated"] and res["n"] == list(range(1, 9))
    assert all(d <= 2 * math.log2(n) + 4 for n, d in zip(res["n"], res["distance"]))
    assert power_path_distortion(cb, "a", 20)["truncated"]
