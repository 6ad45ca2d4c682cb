import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alexpara import poset as P
from alexpara import rational as R
from alexpara.catalog import INFINITE, catalog_build, catalog_names, gl_det, sl_antichain_sample
from alexpara.errors import BadParameter, UnknownExample
from alexpara.laws import radius
from alexpara.oracle import ball, check_group_axioms, check_translations_monotone, order_pairs, sample_elements


def test_int_vectors_entry():
    e = catalog_build("int_vectors", {"k": 2})
    assert sorted(e.oracle.covers_above((0, 0))) == [(0, 1), (1, 0)]
    assert radius(e.oracle) == 2 and e.expected["radius"] == 2
    assert e.expected["width"] == INFINITE and e.expected["has_beat_points"] is False


def test_disjoint_chains_rat_entry():
    e = catalog_build("disjoint_chains_rat", {"n": 3})
    assert e.expected["width"] == 3 and e.expected["radius"] == 0 and radius(e.oracle) == 0
    assert P.width(e.window(2).poset) == 3


def test_width_join_entry():
    e = catalog_build("width_join", {"n": 2})
    o = e.oracle
    x = lambda i: (i, 0)  # noqa: E731
    y = lambda i: (i, 1)  # noqa: E731
    assert o.mul(x(1), y(3)) == y(4)
    assert o.mul(y(1), y(1)) == x(2)
    assert radius(o) == 2 and e.expected["width"] == 2


def test_expected_table_matches_windows():
    for name in catalog_names():
        e = catalog_build(name)
        w = e.window()
        exp = e.expected
        r = radius(e.oracle)
        if exp["radius"] != "unsupported":
            assert r == exp["radius"], name
        if exp["width"] != INFINITE:
            assert P.width(w.poset) == exp["width"], name
        assert P.is_connected(w.poset) == exp["connected"], name
        inner = w.interior()
        if inner is not None and len(inner):
            beats = {x for x, _ in P.beat_points(w.poset)} & set(inner.poset.elements)
            assert bool(beats) == exp["has_beat_points"], name


def test_catalog_errors():
    with pytest.raises(UnknownExample):
        catalog_build("klein_bottle")
    with pytest.raises(BadParameter):
        catalog_build("width_join", {"n": 0})
    with pytest.raises(BadParameter):
        catalog_build("sym_loewner", {"n": 0})
    with pytest.raises(BadParameter):
        catalog_build("int_chain", {"n": 2})


def test_sl_antichain_sample_examples():
    got = sl_antichain_sample(2, 3)
    assert got == [R.identity(2), R.matrix([[1, 1], [0, 1]]), R.matrix([[1, 0], [1, 1]])]
    assert sl_antichain_sample(2, 1) == [R.identity(2)]
    with pytest.raises(BadParameter):
        sl_antichain_sample(1, 3)


@pytest.mark.parametrize("n,count", [(2, 12), (3, 20)])
def test_sl_sample_is_an_antichain(n, count):
    o = gl_det(n).oracle
    pts = sl_antichain_sample(n, count)
    assert len({R.encode(m) for m in pts}) == count
    assert all(R.det(m) == 1 for m in pts)
    assert all(not o.leq(a, b) for a in pts for b in pts if a != b)


@pytest.mark.parametrize("name", catalog_names())
def test_every_entry_is_a_paratopological_group(name):
    o = catalog_build(name).oracle
    pts = sample_elements(o, 60, 0, 2)
    assert check_group_axioms(o, pts).passed
    assert check_translations_monotone(o, order_pairs(o, pts, 800)).passed


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_width_join_windows_are_stacked_antichains(n):
    e = catalog_build("width_join", {"n": n})
    assert P.is_iterated_antichain_join(e.window(3).poset) == n


@pytest.mark.parametrize("name", ["disjoint_chains_int", "disjoint_chains_rat"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_disjoint_chains_components(name, n):
    o = catalog_build(name, {"n": n}).oracle
    for depth in (2, 3, 4):
        from alexpara.oracle import window
        w = window(o, ball(o, depth))
        assert len(P.components(w.poset)) == n


# -- GL_n multiplication is monotone: the three cases of the proof --------------------

def _invertible(rng, n=2):
    while True:
        m = R.matrix([[Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3])) for _ in range(n)] for _ in range(n)])
        if R.det(m) != 0:
            return m


@given(st.integers(0, 2**31), st.sampled_from(["equal", "left_equal", "right_equal", "both_strict"]))
def test_gl_multiplication_monotone_cases(seed, case):
    o = gl_det(2).oracle
    rng = random.Random(seed)
    a, b = _invertible(rng), _invertible(rng)
    grow = lambda m: R.mul(m, R.diag([Fraction(rng.randint(2, 5)), 1]))  # noqa: E731
    c = a if case in ("equal", "left_equal") else grow(a)
    d = b if case in ("equal", "right_equal") else grow(b)
    assert o.leq(a, c) and o.leq(b, d)
    assert o.leq(o.mul(a, b), o.mul(c, d))
