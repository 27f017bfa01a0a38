from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.errors import InputError, ResourceError, UnsupportedOperationError
from cuspidal.groups import (FreeAbelianGroup, FreeGroup, FreeProduct, PermutationGroup, cayley_ball,
                             coset_trace, group_spec, load_group_spec, power_tube)

from zxz2_oracle import zxz2_oracle_nf

ZXZ2 = FreeProduct([FreeGroup(1, ["a"]), FreeAbelianGroup(2, ["b", "c"])])


def test_free_reduction():
    F = FreeGroup(2)
    assert F.format(F.normal_form(F.parse("a b b^-1 a"))) == "aa"


def test_abelian_commutator_is_trivial():
    Z = FreeAbelianGroup(2, ["b", "c"])
    assert Z.normal_form(Z.parse("b c b^-1 c^-1")) == ()


def test_free_product_normal_form():
    assert ZXZ2.format(ZXZ2.normal_form(ZXZ2.parse("a b c b^-1 a"))) == "aca"
    assert zxz2_oracle_nf("abcBa") == "aca"


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="aAbBcC", max_size=14))
def test_free_product_matches_oracle(s):
    w = ZXZ2.normal_form(ZXZ2.parse(s or "e"))
    assert ZXZ2.format(w) == zxz2_oracle_nf(s)


MODELS = [FreeGroup(2), FreeAbelianGroup(2), FreeAbelianGroup(3), ZXZ2]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(MODELS), st.data())
def test_normal_form_idempotent_and_associative(m, data):
    letters = st.lists(st.sampled_from([x for i in range(1, m.rank + 1) for x in (i, -i)]), max_size=8)
    u, v, w = (tuple(data.draw(letters)) for _ in range(3))
    nf = m.normal_form
    assert nf(nf(u)) == nf(u)
    assert nf(nf(u + v) + w) == nf(u + nf(v + w))
    assert nf(m.inverse(nf(u)) + u) == ()


def test_ball_sizes():
    assert cayley_ball(FreeGroup(2), 2).graph.vertex_count == 17
    for r in range(1, 7):
        assert cayley_ball(FreeAbelianGroup(2), r).graph.vertex_count == 2 * r * r + 2 * r + 1


@pytest.mark.parametrize("m,R", [(FreeGroup(2), 5), (FreeAbelianGroup(2), 6), (ZXZ2, 4), (FreeGroup(3), 3)])
def test_ball_distance_is_word_length(m, R):
    b = cayley_ball(m, R)
    d = b.graph.bfs(b.origin)
    assert all(d[v] == len(w) for v, w in enumerate(b.words))
    assert len(set(b.words)) == len(b.words)
    assert max(len(w) for w in b.words) == R


def test_left_translation_edges():
    b = cayley_ball(ZXZ2, 4)
    m = b.model
    for v, w in enumerate(b.words):
        for s in (1, -1, 2, -2, 3, -3):
            u = b.index.get(m.normal_form((s,) + w))
            # left multiplication by s is a graph automorphism on the interior; check edge images
            for x in b.graph.neighbors(v):
                ux = b.index.get(m.normal_form((s,) + b.words[int(x)]))
                if u is not None and ux is not None:
                    assert b.graph.has_edge(u, ux)


def _brute_cosets(R):
    """Enumerate every letter string of length <= R, reduce with the oracle, bucket by
    whether g^-1 g' reduces to a pure b/c word."""
    elems = {zxz2_oracle_nf("".join(p)) for n in range(R + 1) for p in itertools.product("aAbBcC", repeat=n)}
    def inv(s):
        return "" if s == "e" else s[::-1].swapcase()
    buckets = []
    for g in sorted(elems):
        for bkt in buckets:
            h = zxz2_oracle_nf(inv(bkt[0]) + ("" if g == "e" else g))
            if set(h) <= set("bBcCe"):
                bkt.append(g)
                break
        else:
            buckets.append([g])
    return sorted(sorted(b) for b in buckets)


def test_free_product_traces_match_brute_force():
    H = ZXZ2.subgroup("H", ["b", "c"])
    b = cayley_ball(ZXZ2, 3, [H])
    got = sorted(sorted(ZXZ2.format(b.words[v]) for v in tr) for tr in b.horosphere_traces["H"])
    assert got == _brute_cosets(3)
    # traces partition the ball
    allv = np.concatenate(b.horosphere_traces["H"])
    assert len(allv) == len(set(allv.tolist())) == b.graph.vertex_count
    # direct membership agrees
    tr = coset_trace(b, "H", "a")
    assert sorted(ZXZ2.format(b.words[v]) for v in tr) == next(x for x in got if "a" in x)


def test_coset_traces_of_cyclic_subgroup():
    F = FreeGroup(2)
    A = F.subgroup("A", ["a"])
    b = cayley_ball(F, 4, [A])
    tr = coset_trace(b, A, "e")
    assert sorted(b.words[v] for v in tr) == sorted(F.power((1,), k) for k in range(-4, 5))
    tr = coset_trace(b, A, "b")
    assert sorted(b.words[v] for v in tr) == sorted(F.normal_form((2,) + F.power((1,), k)) for k in range(-3, 4))


def test_membership_agrees_with_enumeration():
    F = FreeGroup(2)
    H = F.subgroup("H", ["ab", "b^2"])
    b = cayley_ball(F, 4, [H])
    # enumerate subgroup elements as products of generators up to length 8
    gens = [F.parse("ab"), F.parse("b^2")]
    gens += [F.inverse(g) for g in gens]
    elems = {()}
    frontier = {()}
    for _ in range(8):
        frontier = {F.multiply(x, g) for x in frontier for g in gens}
        elems |= frontier
    for w in b.words:
        assert F.contains(H, w) == (w in elems)


def test_extended_generating_set_is_recorded():
    F = FreeGroup(2)
    b = cayley_ball(F, 3, [F.subgroup("H", ["ab"])])
    assert F.parse("ab") in b.generating_set
    plain = cayley_ball(F, 3, [F.subgroup("A", ["a"])])
    assert plain.generating_set == ((1,), (2,))


def test_abelian_membership_lattice():
    Z = FreeAbelianGroup(2)
    H = Z.subgroup("H", ["a^2 b", "b^3"])
    for x in range(-6, 7):
        for y in range(-6, 7):
            w = Z.from_vector([x, y])
            # (x, y) = i (2, 1) + j (0, 3)  <=>  x even and (y - x/2) divisible by 3
            assert Z.contains(H, w) == (x % 2 == 0 and (y - x // 2) % 3 == 0)


def test_resource_error_reports_needed_count():
    with pytest.raises(ResourceError) as exc:
        cayley_ball(FreeGroup(2), 20, vertex_budget=1000)
    assert exc.value.needed == 2 * 3 ** 20 - 1


def test_radius_must_be_positive():
    with pytest.raises(InputError):
        cayley_ball(FreeGroup(2), 0)


def test_external_family_needs_membership_table():
    # Z/6 with one generator
    perm = [(v + 1) % 6 for v in range(6)]
    G = PermutationGroup([perm], ["s"])
    b = cayley_ball(G, 3)
    assert b.graph.vertex_count == 6
    sub = G.subgroup("T", ["s^2"])
    with pytest.raises(UnsupportedOperationError):
        coset_trace(b, sub, "e")
    G2 = PermutationGroup([perm], ["s"], membership={"T": [0, 2, 4]})
    b2 = cayley_ball(G2, 3, [G2.subgroup("T", ["s^2"])])
    assert sorted(len(t) for t in b2.horosphere_traces["T"]) == [3, 3]


def test_group_spec_round_trip(tmp_path):
    spec = {"family": "free_product", "factors": [{"family": "free", "rank": 1},
                                                   {"family": "free_abelian", "rank": 2}],
            "subgroups": [{"name": "H1", "generators": ["b", "c"]}]}
    m, subs = load_group_spec(spec)
    assert m.names == ("a", "b", "c") or list(m.names) == ["a", "b", "c"]
    again, subs2 = load_group_spec(group_spec(m, subs))
    assert again.spec() == m.spec() and subs2[0].generator_words == subs[0].generator_words


def test_power_tube_contains_far_powers():
    F = FreeGroup(2)
    t = power_tube(F, "a", 50, 1)
    assert F.power((1,), 50) in t and F.power((1,), -50) in t
    # powers a^-51..a^51 plus the two b-neighbours of each centre
    assert t.graph.vertex_count == 103 + 2 * 101
