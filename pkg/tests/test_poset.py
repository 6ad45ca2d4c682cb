import json

import numpy as np
import pydot
import pytest
from hypothesis import given, settings

import brute
from alexpara import poset as P
from alexpara.errors import CycleDetected, SizeLimitExceeded, UnknownLabel
from conftest import grid, level_poset, posets, rel_of


def test_from_cover_pairs_examples():
    p = P.from_cover_pairs("ab", [("a", "b")])
    assert p.le("a", "b") and not p.le("b", "a")
    q = P.from_cover_pairs("ab", [])
    assert not q.le("a", "b") and not q.le("b", "a")
    r = P.from_cover_pairs("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert r.le("a", "c")
    assert P.covers(r).edges == (("a", "b"), ("b", "c"))


def test_from_cover_pairs_errors():
    with pytest.raises(CycleDetected):
        P.from_cover_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(UnknownLabel):
        P.from_cover_pairs("ab", [("a", "z")])
    with pytest.raises(ValueError):
        P.from_cover_pairs("aa", [])


def test_down_set_examples(vee):
    c3 = P.chain("abc")
    assert P.down_set(c3, ["b"]) == {"a", "b"}
    assert P.up_set(c3, ["b"]) == {"b", "c"}
    g = grid(-2, 2)
    assert P.down_set(g, [(0, 0)]) == {(a, b) for a in range(-2, 1) for b in range(-2, 1)}
    assert P.down_set(vee, ["c"]) == {"a", "b", "c"}
    assert P.star(c3, ["b"]) == {"a", "b", "c"}
    with pytest.raises(UnknownLabel):
        P.down_set(c3, ["q"])


def test_covers_examples(diamond):
    assert P.covers(P.chain("abc")).edges == (("a", "b"), ("b", "c"))
    assert P.covers(P.antichain("ab")).edges == ()
    edges = set(P.covers(diamond).edges)
    assert edges == {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")}


def test_width_examples():
    assert P.width(P.chain("abcde")) == 1
    assert P.width(level_poset(range(-2, 3), 2)) == 2
    pts = [(q, b) for q in (-1, -0.5, 0, 0.25, 1) for b in range(3)]
    leq = np.array([[x[1] == y[1] and x[0] <= y[0] for y in pts] for x in pts])
    assert P.width(P.FinitePoset(pts, leq)) == 3


def test_width_empty():
    e = P.antichain([])
    assert P.width(e) == 0 and P.height(e) == 0 and e.is_empty
    inv = P.invariants(e)
    assert inv["empty"] and inv["width"] == 0


def test_height_examples(diamond):
    assert P.height(P.antichain("abcd")) == 0
    assert P.height(P.chain("abcd")) == 3
    assert P.height(diamond) == 2
    assert P.height_of(diamond, "d") == 2


def test_maximal_antichain_through_examples():
    assert P.maximal_antichain_through(P.chain("abc"), "b") == ["b"]
    assert set(P.maximal_antichain_through(P.antichain("ab"), "a")) == {"a", "b"}
    g = grid(-2, 2)
    got = P.maximal_antichain_through(g, (0, 0))
    # exhaustive antichain search through (0, 0)
    rel = rel_of(g)
    every = brute.antichains_containing(g.elements, rel, (0, 0))
    best = max(len(a) for a in every)
    winners = [set(a) for a in every if len(a) == best]
    assert best == 5 and winners == [{(-2, 2), (-1, 1), (0, 0), (1, -1), (2, -2)}]
    assert set(got) == winners[0]


def test_connectivity_examples(diamond, vee):
    a2 = P.antichain("ab")
    assert not P.is_connected(a2) and not P.is_hyperconnected(a2)
    assert all(f(diamond) for f in (P.is_connected, P.is_hyperconnected, P.is_ultraconnected, P.is_directed))
    assert not P.is_hyperconnected(vee)
    assert P.is_directed(vee) and P.is_ultraconnected(vee)
    assert P.components(a2) == [frozenset("a"), frozenset("b")]


def test_opposite_examples():
    c = P.chain("ab")
    o = P.opposite(c)
    assert o.le("b", "a") and not o.le("a", "b")
    a = P.antichain("abc")
    assert P.opposite(a) == a


def test_join_examples():
    j = P.join(P.antichain("a"), P.antichain("b"))
    assert j == P.chain("ab")
    circle = P.join(P.antichain("ab"), P.antichain("cd"))
    assert len(P.covers(circle).edges) == 4
    clash = P.join(P.antichain("a"), P.antichain("a"))
    assert clash.elements == ((0, "a"), (1, "a"))


def test_beat_point_examples():
    assert {x for x, _ in P.beat_points(P.chain("abc"))} == {"a", "b", "c"}
    circle = P.join(P.antichain("ab"), P.antichain("cd"))
    assert P.beat_points(circle) == []
    g = grid(-2, 2)
    c = g.subposet(P.star(g, [(0, 0)]))
    beats = {x for x, _ in P.beat_points(c)}
    assert (0, 0) not in beats
    # beat points of the star are boundary artifacts on the outer rim
    assert all(max(abs(a), abs(b)) >= 1 and (a, b) != (0, 0) for a, b in beats)


def test_core_examples(diamond):
    assert len(P.core(P.chain("abcdef"))) == 1
    circle = P.join(P.antichain("ab"), P.antichain("cd"))
    assert P.core(circle) == circle
    assert len(P.core(diamond)) == 1


def test_euler_examples():
    assert P.euler_characteristic(P.antichain("a")) == 1
    a2 = lambda t: P.antichain([t + "0", t + "1"])
    two = P.iterated_join([a2("x"), a2("y")])
    three = P.iterated_join([a2("x"), a2("y"), a2("z")])
    assert P.euler_characteristic(two) == 0
    assert P.chain_counts(three) == [6, 12, 8]
    assert P.euler_characteristic(three) == 2
    assert P.euler_characteristic(three) == brute.euler(three.elements, rel_of(three))


def test_iterated_antichain_join_examples():
    assert P.is_iterated_antichain_join(level_poset(range(6), 2)) == 2
    assert P.is_iterated_antichain_join(grid(-2, 2)) is None
    assert P.is_iterated_antichain_join(P.chain("abcd")) == 1
    assert P.is_iterated_antichain_join(P.antichain([])) is None


def test_isomorphism_examples(vee):
    p = P.from_cover_pairs("abcd", [("a", "b"), ("a", "c"), ("c", "d")])
    q = p.relabel({"a": "w", "b": "x", "c": "y", "d": "z"})
    assert P.is_isomorphic(p, q)
    assert not P.is_isomorphic(P.chain("abc"), vee)
    big = grid(-2, 2)
    u0 = big.subposet(P.down_set(big, [(0, 0)]))
    shifted = grid(-1, 3)
    u1 = shifted.subposet(P.down_set(shifted, [(1, 1)]))
    assert P.is_isomorphic(u0, u1)
    with pytest.raises(SizeLimitExceeded):
        P.is_isomorphic(P.chain(range(50)), P.chain(range(50)))


def test_json_round_trip(diamond):
    s = P.dumps(diamond)
    data = json.loads(s)
    assert data["elements"] == ["a", "b", "c", "d"]
    assert P.loads(s) == diamond


def test_dot_parses(diamond):
    dot = P.to_dot(diamond, highlight=["a"])
    graphs = pydot.graph_from_dot_data(dot)
    assert graphs and len(graphs[0].get_edges()) == 4
    assert "rank=same" in dot


def test_down_set_enumeration_is_exhaustive_on_small_grid():
    g = grid(-2, 2)
    masks = list(P.iter_down_sets(g))
    # down-sets of a 5x5 grid correspond to lattice paths: C(10, 5)
    assert len(masks) == 252
    assert len({m.tobytes() for m in masks}) == 252


# -- properties --------------------------------------------------------------

@given(posets())
def test_down_up_duality(p):
    for x in p.elements:
        assert P.down_set(p, [x]) == P.up_set(P.opposite(p), [x])


@given(posets())
def test_covers_closure_identity(p):
    assert P.from_cover_pairs(p.elements, P.covers(p).edges) == p


@given(posets())
def test_cover_graph_is_a_transitive_reduction(p):
    edges = set(P.covers(p).edges)
    for a, b in edges:
        assert not any((a, c) in edges and p.le(c, b) and c != b for c in p.elements)


@given(posets())
def test_width_height_self_dual(p):
    o = P.opposite(p)
    assert P.width(p) == P.width(o)
    assert P.height(p) == P.height(o)
    assert P.opposite(o) == p


@settings(max_examples=60)
@given(posets(max_size=7))
def test_dilworth_consistency(p):
    rel = rel_of(p)
    w = P.width(p)
    assert w == brute.max_antichain_size(p.elements, rel)
    assert w == brute.min_chain_cover(p.elements, rel)
    assert P.is_antichain(p, P.maximum_antichain(p)) and len(P.maximum_antichain(p)) == w
    parts = P.chain_decomposition(p)
    assert len(parts) == w
    assert sorted(x for c in parts for x in c) == sorted(p.elements)
    for c in parts:
        assert all(p.le(a, b) for a, b in zip(c, c[1:]))
    assert P.height(p) == (brute.longest_chain(p.elements, rel) if len(p) else 0)


@given(posets())
def test_directed_implies_ultraconnected(p):
    if P.is_directed(p):
        assert P.is_ultraconnected(p)


@settings(max_examples=60)
@given(posets())
def test_core_idempotent_and_euler_invariant(p):
    c = P.core(p)
    assert P.core(c) == c
    assert P.beat_points(c) == []
    assert P.euler_characteristic(c) == P.euler_characteristic(p)
    assert P.euler_characteristic(p) == brute.euler(p.elements, rel_of(p))


@settings(max_examples=30)
@given(posets(max_size=4), posets(max_size=4), posets(max_size=4))
def test_join_associative_up_to_isomorphism(p, q, r):
    assert P.is_isomorphic(P.join(P.join(p, q), r), P.join(p, P.join(q, r)))


@given(posets(max_size=5), posets(max_size=5))
def test_join_height_additive(p, q):
    if len(p) and len(q):
        assert P.height(P.join(p, q)) == P.height(p) + P.height(q) + 1


@given(posets())
def test_maximal_antichain_through_is_maximum_among_those(p):
    rel = rel_of(p)
    for x in p.elements:
        a = P.maximal_antichain_through(p, x)
        assert x in a and P.is_antichain(p, a)
        assert len(a) == max(len(s) for s in brute.antichains_containing(p.elements, rel, x))


@given(posets())
def test_isomorphic_to_shuffled_copy(p):
    q = p.relabel(lambda e: ("copy", e))
    ids = list(reversed(range(len(q))))
    q = q._sub(ids)
    assert P.is_isomorphic(p, q)
