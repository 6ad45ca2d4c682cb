"""Structural theorems about Alexandroff paratopological groups as executable checks.

Every check returns a :class:`CheckResult`.  Witnesses hold encoded elements
only, so :func:`replay` can re-verify them against a fresh oracle through raw
``mul``/``inv``/``leq`` calls.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import poset as P
from .errors import BadChain, BadParameter
from .oracle import (DEFAULT_SEED, DENSE, UNSUPPORTED, GroupOracle, SubsetSpec, Window, ball, ball_layers,
                     default_budget, product, product_subset, sample_elements, window)
from .result import CheckResult, failed, inapplicable, passed

MAX_PRODUCT_FACTORS = 8
DOWN_SET_LIMIT = 4096


def _same(o, x, y) -> bool:
    return o.encode(x) == o.encode(y)


def _search_pool(o: GroupOracle, budget: int | None):
    """Ball shells around the identity, nearest first."""
    return ball_layers(o, default_budget() if budget is None else budget)


# -- inverses of open sets ---------------------------------------------------------

def law_inverse_flip(o: GroupOracle, sample, seed=None) -> CheckResult:
    """Elements above the identity have inverses below it."""
    one = o.identity
    ups = [x for x in sample if o.leq(one, x) and not _same(o, x, one)]
    if not ups:
        return inapplicable("inverse_flip", "no sampled element above the identity", seed)
    for x in ups:
        if not o.leq(o.inv(x), one):
            return failed("inverse_flip", {"x": o.encode(x)}, seed, len(ups))
    return passed("inverse_flip", seed, len(ups))


def law_opposite_identity_neighborhoods(o: GroupOracle, w: Window, seed=None) -> CheckResult:
    """x <= 1 iff 1 <= x^-1, and 1 <= x iff x^-1 <= 1, on every window point."""
    one = o.identity
    for x in w.elements:
        xi = o.inv(x)
        for below, above, direction in ((o.leq(x, one), o.leq(one, xi), "down"),
                                        (o.leq(one, x), o.leq(xi, one), "up")):
            if below != above:
                return failed("opposite_identity_neighborhoods",
                              {"x": o.encode(x), "direction": direction}, seed, len(w))
    return passed("opposite_identity_neighborhoods", seed, len(w))


def law_open_inverse_closed(o: GroupOracle, w: Window, limit: int | None = DOWN_SET_LIMIT,
                            seed=None) -> CheckResult:
    """Inverting a down-set gives an up-closed set, and vice versa.

    Runs over the inverse-closed part of the window so that the inverse of a
    window subset stays inside the window.
    """
    sym = [x for x in w.elements if o.inv(x) in w]
    sub = w.restrict(sym)
    p = sub.poset
    flip = np.array([p.idx(o.encode(o.inv(x))) for x in sub.elements], dtype=int)
    checked = 0
    for kind, q in (("down", p), ("up", P.opposite(p))):
        for mask in P.iter_down_sets(q, limit):
            checked += 1
            image = np.zeros(len(p), dtype=bool)
            image[flip[mask]] = True
            # the image must be closed upward for down-sets, downward for up-sets
            reach = p.leq[image].any(axis=0) if kind == "down" else p.leq[:, image].any(axis=1)
            escaped = np.flatnonzero(reach & ~image)
            if len(escaped):
                src = [p.elements[i] for i in np.flatnonzero(mask)]
                return failed("open_inverse_closed",
                              {"kind": kind, "set": src, "escapee": p.elements[escaped[0]]},
                              seed, checked)
    exhaustive = limit is None or checked < 2 * limit
    return passed("open_inverse_closed", seed, checked, window=len(p), exhaustive=exhaustive)


# -- torsion, homogeneity, beat points --------------------------------------------

def law_no_torsion_near_identity(o: GroupOracle, w: Window, max_power: int = 20, seed=None) -> CheckResult:
    """No element comparable to the identity, other than 1, has order <= max_power.

    Finite-order elements incomparable to the identity are reported in the
    pass witness.
    """
    one = o.identity
    incomparable = []
    near = 0
    for x in w.elements:
        if _same(o, x, one):
            continue
        order = None
        y = x
        for k in range(1, max_power + 1):
            if _same(o, y, one):
                order = k
                break
            y = o.mul(y, x)
        if o.comparable(x, one):
            near += 1
            if order is not None:
                return failed("no_torsion_near_identity", {"x": o.encode(x), "order": order}, seed, near)
        elif order is not None:
            incomparable.append({"x": o.encode(x), "order": order})
    return passed("no_torsion_near_identity", seed, near, witness={"torsion_incomparable": incomparable})


def law_translation_homogeneity(o: GroupOracle, w: Window, x, limit: int = 40, seed=None) -> CheckResult:
    """Left translation by x maps U_1 and F_1 in the window isomorphically onto U_x and F_x."""
    one = o.identity
    if one not in w:
        return inapplicable("translation_homogeneity", "identity outside the window", seed)
    shifted = [o.mul(x, y) for y in w.elements]
    used = 0
    for kind, rel in (("down", lambda a, b: o.leq(a, b)), ("up", lambda a, b: o.leq(b, a))):
        base = [y for y in w.elements if rel(y, one)]
        image = [o.mul(x, y) for y in base]
        target = [z for z in shifted if rel(z, x)]
        if {o.encode(z) for z in image} != {o.encode(z) for z in target}:
            return failed("translation_homogeneity", {"x": o.encode(x), "kind": kind, "reason": "image"},
                          seed, used)
        if len(base) < 2:
            continue
        base = base[:limit]
        image = [o.mul(x, y) for y in base]
        for a, ta in zip(base, image):
            for b, tb in zip(base, image):
                used += 1
                if o.leq(a, b) != o.leq(ta, tb):
                    return failed("translation_homogeneity",
                                  {"x": o.encode(x), "kind": kind, "a": o.encode(a), "b": o.encode(b)},
                                  seed, used)
        src, dst = window(o, base).poset, window(o, image).poset
        if not P.is_isomorphic(src, dst, limit=max(limit, 40)):
            return failed("translation_homogeneity", {"x": o.encode(x), "kind": kind, "reason": "isomorphism"},
                          seed, used)
    if used == 0:
        return inapplicable("translation_homogeneity", "window too small", seed)
    return passed("translation_homogeneity", seed, used, witness={"x": o.encode(x)})


def law_beat_dichotomy(o: GroupOracle, w: Window, seed=None) -> CheckResult:
    """Either every interior point is a beat point and the identity's interior
    component is a chain, or no interior point is a beat point."""
    inner = w.interior()
    if inner is None:
        return inapplicable("beat_dichotomy", f"covers are {o.cover_kind}", seed)
    if len(inner) == 0:
        return inapplicable("beat_dichotomy", "window interior is empty", seed)
    one = o.encode(o.identity)
    if one not in inner.poset.index:
        return inapplicable("beat_dichotomy", "identity outside the window interior", seed)
    # beat status of interior points is read off the whole window, where all their covers live
    beats = {x for x, _ in P.beat_points(w.poset)} & set(inner.poset.elements)
    identity_beat = one in beats
    if identity_beat:
        stray = [x for x in inner.poset.elements if x not in beats]
        if stray:
            return failed("beat_dichotomy", {"point": stray[0], "identity_beat": True}, seed, len(inner))
        comp = next(c for c in P.components(inner.poset) if one in c)
        part = inner.poset.subposet(comp)
        if not P.is_chain(part):
            return failed("beat_dichotomy", {"component": sorted(comp), "identity_beat": True}, seed, len(inner))
        return passed("beat_dichotomy", seed, len(inner), witness={"identity_beat": True, "chain": len(comp)})
    if beats:
        return failed("beat_dichotomy", {"point": sorted(beats)[0], "identity_beat": False}, seed, len(inner))
    return passed("beat_dichotomy", seed, len(inner), witness={"identity_beat": False})


# -- connectedness and compactness-type properties ----------------------------------

def _bound(o, x, y, pool, lower: bool):
    ok = (lambda z: o.leq(z, x) and o.leq(z, y)) if lower else (lambda z: o.leq(x, z) and o.leq(y, z))
    for layer in pool:
        for g in layer:
            for base in (x, y, o.identity):
                z = o.mul(base, g)
                if ok(z):
                    return z
    return None


def law_directed_iff_hyperconnected(o: GroupOracle, pairs, budget: int | None = None, seed=None) -> CheckResult:
    """Every sampled pair has a common lower and a common upper bound."""
    pool = _search_pool(o, budget)
    found = []
    stuck = None
    for x, y in pairs:
        lo = _bound(o, x, y, pool, lower=True)
        hi = _bound(o, x, y, pool, lower=False)
        if lo is not None and hi is not None:
            if len(found) < 5:
                found.append({"x": o.encode(x), "y": o.encode(y), "lower": o.encode(lo), "upper": o.encode(hi)})
            continue
        if o.component is not None and o.component(x) != o.component(y):
            return failed("hyperconnected", {"x": o.encode(x), "y": o.encode(y),
                                             "component_x": repr(o.component(x)),
                                             "component_y": repr(o.component(y))},
                          seed, len(found))
        if stuck is None:
            stuck = {"x": o.encode(x), "y": o.encode(y)}
    if stuck is not None:
        return inapplicable("hyperconnected", "search budget exhausted", seed, len(pairs), witness=stuck)
    return passed("hyperconnected", seed, len(pairs), witness={"bounds": found})


def law_2_pseudocompact(o: GroupOracle, chain, sample=None, seed=None) -> CheckResult:
    """For x_1 > ... > x_k, the inverse of x_k lies in every closed set U_{x_i}^-1."""
    chain = list(chain)
    if not chain:
        raise BadChain("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not o.lt(b, a):
            raise BadChain(f"{o.encode(b)} is not strictly below {o.encode(a)}")
    last = chain[-1]
    z = o.inv(last)
    for x in chain:
        if not o.leq(o.inv(z), x):
            return failed("2_pseudocompact", {"point": o.encode(z), "x": o.encode(x)}, seed, len(chain))
    # U_x^-1 is the up-set of x^-1: compare on points around each x^-1
    probes = list(sample) if sample is not None else ball(o, 2)
    used = 0
    for x in chain:
        xi = o.inv(x)
        for g in probes:
            y = o.mul(xi, g)
            used += 1
            if o.leq(o.inv(y), x) != o.leq(xi, y):
                return failed("2_pseudocompact", {"x": o.encode(x), "y": o.encode(y), "reason": "not closed"},
                              seed, used)
    return passed("2_pseudocompact", seed, used,
                  witness={"point": o.encode(z), "chain": [o.encode(x) for x in chain]})


def feebly_bounded_check(o: GroupOracle, B: SubsetSpec, sample, budget: int | None = None, seed=None,
                         law_id: str = "feebly_bounded") -> CheckResult:
    """Every sampled x has a member of B below it.

    A finite B is refuted with the escape point b*g, b minimal in B and g < 1;
    a B with a floor is refuted at any x not above the floor.
    """
    e = o.encode
    pool = None
    if B.elements is not None:
        members = list(B.elements)
        if not members:
            return failed(law_id, {"kind": "finite", "escape": e(o.identity), "subset": []}, seed)
        b = next(m for m in members if not any(o.lt(c, m) for c in members))
        pool = _search_pool(o, budget)
        g = next((h for layer in pool for h in layer if o.lt(h, o.identity)), None)
        if g is not None:
            y = o.mul(b, g)
            if not any(o.leq(c, y) for c in members):
                return failed(law_id, {"kind": "finite", "escape": e(y), "b": e(b), "g": e(g),
                                       "subset": [e(c) for c in members]}, seed, 1)
    shown = []
    stuck = None
    for x in sample:
        if B.lower_witness is not None:
            z = B.lower_witness(x)
            if not (B.member(z) and o.leq(z, x)):
                return failed(law_id, {"kind": "bad_witness", "x": e(x), "claimed": e(z)}, seed, len(sample))
        else:
            if B.floor is not None and not o.leq(B.floor, x):
                return failed(law_id, {"kind": "floor", "x": e(x), "floor": e(B.floor)}, seed, len(sample))
            pool = pool or _search_pool(o, budget)
            z = next((o.mul(x, h) for layer in pool for h in layer
                      if B.member(o.mul(x, h)) and o.leq(o.mul(x, h), x)), None)
            if z is None:
                stuck = stuck or {"x": e(x)}
                continue
        if len(shown) < 5:
            shown.append({"x": e(x), "below": e(z)})
    if stuck is not None:
        return inapplicable(law_id, "search budget exhausted", seed, len(sample), witness=stuck)
    return passed(law_id, seed, len(sample), witness={"pairs": shown})


def law_product_feebly_bounded(oracles, specs, sample=None, count: int = 200, budget=None,
                               seed=DEFAULT_SEED) -> CheckResult:
    """The product of feebly bounded subsets is feebly bounded in the product group."""
    oracles, specs = list(oracles), list(specs)
    if not 1 <= len(oracles) <= MAX_PRODUCT_FACTORS or len(oracles) != len(specs):
        raise BadParameter(f"need 1..{MAX_PRODUCT_FACTORS} factors with one subset each")
    po = product(oracles)
    pb = product_subset(specs)
    if sample is None:
        rng = random.Random(seed)
        pools = [sample_elements(o, count, seed + i, 2) for i, o in enumerate(oracles)]
        sample = [tuple(rng.choice(pl) for pl in pools) for _ in range(count)]
    r = feebly_bounded_check(po, pb, sample, budget, seed, law_id="product_feebly_bounded")
    r.stats["factors"] = len(oracles)
    return r


def law_product_set_feebly_bounded(o: GroupOracle, A: SubsetSpec, B: SubsetSpec, sample, seed=None) -> CheckResult:
    """Replays the constructive proof that AB is feebly bounded: c = a*b <= x."""
    if A.lower_witness is None or B.lower_witness is None:
        return inapplicable("product_set_feebly_bounded", "both subsets need lower witnesses", seed)
    e = o.encode
    for x in sample:
        a = A.lower_witness(x)
        y = o.mul(o.inv(a), x)
        b = B.lower_witness(y)
        c = o.mul(a, b)
        trace = {"x": e(x), "a": e(a), "y": e(y), "b": e(b), "c": e(c)}
        if not (A.member(a) and o.leq(a, x) and B.member(b) and o.leq(b, y) and o.leq(c, x)):
            return failed("product_set_feebly_bounded", trace, seed, len(sample))
    return passed("product_set_feebly_bounded", seed, len(sample),
                  witness=trace if len(sample) else None)


# -- balancedness and narrowness -------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubordinatedFamily:
    """Neighbourhoods of the identity, each a down-set containing it."""

    neighborhoods: tuple
    countable: bool = True

    def validate(self, o: GroupOracle, sample) -> bool:
        for v in self.neighborhoods:
            if not v.member(o.identity):
                return False
            pts = [x for x in sample if v.member(x)]
            if any(o.leq(y, x) and not v.member(y) for x in pts for y in sample):
                return False
        return True


def law_subordinated(o: GroupOracle, family: SubordinatedFamily, target: SubsetSpec, sample,
                     pool_size: int = 50, seed=None) -> CheckResult:
    """For each sampled x some V in the family has x V x^-1 inside the target."""
    pools = [[v for v in sample if V.member(v)][:pool_size] for V in family.neighborhoods]
    for x in sample:
        misses = {}
        for V, pool in zip(family.neighborhoods, pools):
            bad = next((v for v in pool if not target.member(o.conj(x, v))), None)
            if bad is None:
                break
            misses[V.name] = o.encode(bad)
        else:
            return failed("subordinated", {"x": o.encode(x), "target": target.name, "misses": misses},
                          seed, len(sample))
    return passed("subordinated", seed, len(sample), pools=[len(p) for p in pools])


def law_omega_narrow(o: GroupOracle, A: SubsetSpec, sample, budget=None, seed=None) -> CheckResult:
    """Every sampled x factors as a*u with a in the countable set A and u <= 1."""
    if not A.countable:
        return inapplicable("omega_narrow", "A is not countable", seed)
    e = o.encode
    pool = None
    for x in sample:
        if A.upper_witness is not None:
            a = A.upper_witness(x)
        else:
            pool = pool or _search_pool(o, budget)
            a = next((o.mul(x, h) for layer in pool for h in layer
                      if A.member(o.mul(x, h)) and o.leq(x, o.mul(x, h))), None)
            if a is None:
                return inapplicable("omega_narrow", "search budget exhausted", seed, witness={"x": e(x)})
        u = o.mul(o.inv(a), x)
        if not (A.member(a) and o.leq(u, o.identity) and _same(o, o.mul(a, u), x)):
            return failed("omega_narrow", {"x": e(x), "a": e(a), "u": e(u)}, seed, len(sample))
    return passed("omega_narrow", seed, len(sample))


def law_totally_omega_narrow(o: GroupOracle, seed=None) -> CheckResult:
    """A cardinality tag: countable groups pass, continuum-sized ones fail."""
    if o.countable:
        return passed("totally_omega_narrow", seed, witness={"cardinality": o.cardinality})
    return failed("totally_omega_narrow", {"cardinality": o.cardinality}, seed)


# -- radius, width and classification ------------------------------------------------

def law_unbounded_height(o: GroupOracle, g, k: int = 10, seed=None) -> CheckResult:
    """1 < g < g^2 < ... < g^k."""
    if not o.lt(o.identity, g):
        raise BadParameter(f"{o.encode(g)} is not above the identity")
    powers = [o.identity]
    for _ in range(k):
        powers.append(o.mul(powers[-1], g))
    for i, (a, b) in enumerate(zip(powers, powers[1:])):
        if not o.lt(a, b):
            return failed("unbounded_height", {"g": o.encode(g), "power": i}, seed, k)
    if len({o.encode(p) for p in powers}) != len(powers):
        return failed("unbounded_height", {"g": o.encode(g), "reason": "repeated power"}, seed, k)
    return passed("unbounded_height", seed, k, witness={"chain": [o.encode(p) for p in powers]})


def radius(o: GroupOracle):
    """Number of upper covers of the identity; 0 for dense orders, None when unknown."""
    c = o.covers_above(o.identity)
    if c == DENSE:
        return 0
    if c == UNSUPPORTED:
        return None
    return len(c)


def law_radius_relations(o: GroupOracle, w: Window, sample, seed=None) -> CheckResult:
    """Cover counts are homogeneous, bounded by width, and multiply sensibly in products."""
    if o.cover_kind != "finite":
        return inapplicable("radius_relations", f"covers are {o.cover_kind}", seed, radius=radius(o))
    e = o.encode
    r = radius(o)
    one_up = o.covers_above(o.identity)
    for x in sample:
        up = o.covers_above(x)
        if len(up) != r or any(not o.lt(x, y) for y in up):
            return failed("radius_relations", {"x": e(x), "reason": "cover count"}, seed, len(sample))
        if {e(y) for y in up} != {e(o.mul(x, c)) for c in one_up}:
            return failed("radius_relations", {"x": e(x), "reason": "not a translate"}, seed, len(sample))
    inner = w.interior()
    for x in inner.elements:
        got = {lab for lab in P.upper_covers(w.poset, e(x))}
        if got != {e(y) for y in o.covers_above(x)}:
            return failed("radius_relations", {"x": e(x), "reason": "window covers"}, seed, len(sample))
    wd = P.width(w.poset)
    through = P.maximal_antichain_through(w.poset, e(o.identity))
    if len(through) != wd or r > wd:
        return failed("radius_relations", {"reason": "width", "radius": r, "width": wd,
                                           "through_identity": through}, seed, len(sample))
    covered = set().union(*(P.star(w.poset, [a]) for a in through))
    if len(covered) != len(w):
        return failed("radius_relations", {"reason": "star union", "through_identity": through}, seed, len(sample))
    rp = radius(product([o, o]))
    if rp > 2 * r * r:
        return failed("radius_relations", {"reason": "product", "radius": r, "product_radius": rp}, seed)
    return passed("radius_relations", seed, len(sample), radius=r, window_width=wd, product_radius=rp)


def law_classification(o: GroupOracle, w: Window, seed=None) -> CheckResult:
    """Radius equal to width forces a stacked-antichain interior; radius 1 forces disjoint chains."""
    r = radius(o)
    if r is None:
        return inapplicable("classification", "covers unsupported", seed)
    inner = w.interior()
    if inner is None:
        return inapplicable("classification", f"covers are {o.cover_kind}", seed, radius=r)
    if len(inner) == 0:
        return inapplicable("classification", "window interior is empty", seed, radius=r)
    wd = P.width(inner.poset)
    out = {"radius": r, "width": wd}
    if r == 1:
        comps = P.components(inner.poset)
        if not all(P.is_chain(inner.poset.subposet(c)) for c in comps):
            return failed("classification", {**out, "reason": "component not a chain"}, seed, len(inner))
        out["chains"] = len(comps)
    if r == wd:
        n = P.is_iterated_antichain_join(inner.poset)
        if n != r:
            return failed("classification", {**out, "join": n}, seed, len(inner))
        out["join"] = n
    if r != 1 and r != wd:
        return passed("classification", seed, len(inner), witness={**out, "hypothesis": False})
    return passed("classification", seed, len(inner), witness=out)


# -- witness replay ----------------------------------------------------------------

def replay(o: GroupOracle, result: CheckResult) -> bool:
    """Re-verify a witness through raw oracle calls.

    Returns True when the witness confirms the recorded status.  Laws without
    a self-contained witness raise ``KeyError``.
    """
    w = result.witness or {}
    d, leq = o.decode, o.leq
    one = o.identity
    law, status = result.law_id, result.status
    if law == "translations_monotone" and status == "fail":
        a, b, g = d(w["a"]), d(w["b"]), d(w["g"])
        ga, gb = (o.mul(g, a), o.mul(g, b)) if w["side"] == "left" else (o.mul(a, g), o.mul(b, g))
        return leq(a, b) and not leq(ga, gb)
    if law == "inversion_monotone" and status == "fail":
        a, b = d(w["a"]), d(w["b"])
        return leq(a, b) and not leq(o.inv(a), o.inv(b))
    if law == "inverse_flip" and status == "fail":
        x = d(w["x"])
        return leq(one, x) and not leq(o.inv(x), one)
    if law == "opposite_identity_neighborhoods" and status == "fail":
        x = d(w["x"])
        if w["direction"] == "down":
            return leq(x, one) != leq(one, o.inv(x))
        return leq(one, x) != leq(o.inv(x), one)
    if law == "no_torsion_near_identity" and status == "fail":
        x = d(w["x"])
        return o.comparable(x, one) and o.encode(o.power(x, w["order"])) == o.encode(one)
    if law == "hyperconnected":
        if status == "fail":
            x, y = d(w["x"]), d(w["y"])
            return o.component is not None and o.component(x) != o.component(y)
        return all(leq(d(b["lower"]), d(b["x"])) and leq(d(b["lower"]), d(b["y"]))
                   and leq(d(b["x"]), d(b["upper"])) and leq(d(b["y"]), d(b["upper"])) for b in w["bounds"])
    if law in ("feebly_bounded", "product_feebly_bounded"):
        if status == "fail" and w["kind"] == "finite":
            y = d(w["escape"])
            return not any(leq(d(c), y) for c in w["subset"])
        if status == "fail" and w["kind"] == "floor":
            return not leq(d(w["floor"]), d(w["x"]))
        if status == "pass":
            return all(leq(d(q["below"]), d(q["x"])) for q in w["pairs"])
    if law == "product_set_feebly_bounded":
        x, a, y, b, c = (d(w[k]) for k in "xaybc")
        ok = (leq(a, x) and o.encode(o.mul(o.inv(a), x)) == o.encode(y) and leq(b, y)
              and o.encode(o.mul(a, b)) == o.encode(c) and leq(c, x))
        return ok == (status == "pass")
    if law == "unbounded_height" and status == "pass":
        chain = [d(s) for s in w["chain"]]
        return all(o.lt(a, b) for a, b in zip(chain, chain[1:]))
    if law == "2_pseudocompact" and status == "pass":
        z = d(w["point"])
        return all(leq(o.inv(z), d(x)) for x in w["chain"])
    raise KeyError(f"no replay for {law} ({status})")
