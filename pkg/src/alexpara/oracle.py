"""Symbolic (possibly infinite) ordered groups and their finite windows.

An oracle bundles pure functions: multiplication, inversion, the order and an
optional upper-cover enumerator.  Elements are plain immutable Python values
(ints, tuples, tuples of Fractions); ``encode`` gives the canonical string used
for labels, JSON and deduplication.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import poset as P
from .errors import ExplosionLimit
from .result import CheckResult, failed, inapplicable, passed

DENSE = "dense"
UNSUPPORTED = "unsupported"

BALL_CAP = 10**5
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 200
DEFAULT_SAMPLE_DEPTH = 3


def default_budget() -> int:
    """Ball depth used by witness searches; ``ALEXPARA_BUDGET`` overrides."""
    return int(os.environ.get("ALEXPARA_BUDGET", "4"))


@dataclass(frozen=True, eq=False)
class GroupOracle:
    name: str
    identity: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    leq: Callable[[Any, Any], bool]
    covers_above: Callable[[Any], Any]  # list, DENSE or UNSUPPORTED
    generators: tuple
    cardinality: str  # "finite(n)", "countable" or "continuum"
    encode: Callable[[Any], str] = str
    decode: Callable[[str], Any] = None
    random_element: Callable[[random.Random], Any] | None = None
    box: Callable[[int], list] | None = None  # symmetric finite neighbourhood of the identity
    component: Callable[[Any], Any] | None = None  # constant on zigzag components
    abelian: bool = False
    params: dict = field(default_factory=dict)

    def __repr__(self):
        return f"GroupOracle({self.name})"

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def covers_below(self, x):
        # inversion reverses the order, so it swaps upper and lower covers
        up = self.covers_above(self.inv(x))
        if isinstance(up, str):
            return up
        return [self.inv(y) for y in up]

    @property
    def cover_kind(self) -> str:
        c = self.covers_above(self.identity)
        return c if isinstance(c, str) else "finite"

    @property
    def countable(self) -> bool:
        return self.cardinality != "continuum"

    def power(self, x, k: int):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def conj(self, x, v):
        return self.mul(self.mul(x, v), self.inv(x))

    def header(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "identity": self.encode(self.identity),
                "cardinality": self.cardinality, "covers": self.cover_kind}


def ball_layers(o: GroupOracle, depth: int, cap: int = BALL_CAP) -> list[list]:
    """BFS shells: ``layers[r]`` holds the elements of word length exactly ``r``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    steps = []
    for g in o.generators:
        for s in (g, o.inv(g)):
            if all(o.encode(s) != o.encode(t) for t in steps):
                steps.append(s)
    seen = {o.encode(o.identity)}
    layers = [[o.identity]]
    for _ in range(depth):
        nxt = []
        for x in layers[-1]:
            for s in steps:
                y = o.mul(x, s)
                key = o.encode(y)
                if key not in seen:
                    seen.add(key)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ExplosionLimit(f"ball of {o.name} exceeds {cap} elements")
        layers.append(nxt)
    return layers


def ball(o: GroupOracle, depth: int, cap: int = BALL_CAP) -> list:
    """Products of at most ``depth`` generators and inverse generators, BFS order."""
    return [x for layer in ball_layers(o, depth, cap) for x in layer]


def neighbourhood(o: GroupOracle, depth: int, cap: int = BALL_CAP) -> list:
    """The oracle's box at ``depth`` when it has one, else the generator ball."""
    if o.box is not None:
        elems = o.box(depth)
        if len(elems) > cap:
            raise ExplosionLimit(f"box of {o.name} exceeds {cap} elements")
        return elems
    return ball(o, depth, cap)


@dataclass(frozen=True, eq=False)
class Window:
    """Finite fragment of an oracle with its induced order.

    Poset labels are the canonical encodings of the elements.
    """

    oracle: GroupOracle
    elements: tuple
    poset: P.FinitePoset

    def __len__(self):
        return len(self.elements)

    def node(self, x) -> str:
        return self.oracle.encode(x)

    def element(self, label: str):
        return self.elements[self.poset.idx(label)]

    def __contains__(self, x):
        return self.oracle.encode(x) in self.poset.index

    def nodes(self, xs) -> list[str]:
        return [self.node(x) for x in xs]

    def members(self, labels) -> list:
        return [self.element(s) for s in labels]

    def down(self, x) -> list:
        return self.members(P.down_set(self.poset, [self.node(x)]))

    def up(self, x) -> list:
        return self.members(P.up_set(self.poset, [self.node(x)]))

    def restrict(self, xs) -> "Window":
        keep = {self.node(x) for x in xs}
        ids = [i for i, lab in enumerate(self.poset.elements) if lab in keep]
        return Window(self.oracle, tuple(self.elements[i] for i in ids), self.poset._sub(ids))

    def interior(self) -> "Window | None":
        """Points whose upper and lower covers all lie in the window.

        None when the oracle has no finite cover enumeration.
        """
        o = self.oracle
        if o.cover_kind != "finite":
            return None
        inside = []
        for x in self.elements:
            nbrs = list(o.covers_above(x)) + list(o.covers_below(x))
            if all(y in self for y in nbrs):
                inside.append(x)
        return self.restrict(inside)

    def to_json_dict(self) -> dict:
        data = {"oracle": self.oracle.header()}
        data.update(P.to_json_dict(self.poset))
        return data


def window(o: GroupOracle, elems) -> Window:
    """Materialize the order induced by ``o.leq`` on ``elems`` (duplicates dropped)."""
    uniq = {}
    for x in elems:
        uniq.setdefault(o.encode(x), x)
    xs = tuple(uniq.values())
    n = len(xs)
    leq = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            leq[i, j] = i == j or o.leq(x, y)
    return Window(o, xs, P.FinitePoset(list(uniq), leq))


def verify_window(w: Window) -> bool:
    """Re-check every induced relation against raw oracle calls."""
    o = w.oracle
    for i, x in enumerate(w.elements):
        for j, y in enumerate(w.elements):
            if bool(w.poset.leq[i, j]) != (i == j or bool(o.leq(x, y))):
                return False
    return True


# -- sampling ---------------------------------------------------------------------

def sample_elements(o: GroupOracle, count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                    depth: int = DEFAULT_SAMPLE_DEPTH) -> list:
    """Ball of ``depth`` followed by ``count`` seeded pseudo-random elements."""
    out = {}
    for x in ball(o, depth):
        out.setdefault(o.encode(x), x)
    if o.random_element is not None:
        rng = random.Random(seed)
        for _ in range(count):
            x = o.random_element(rng)
            out.setdefault(o.encode(x), x)
    return list(out.values())


def order_pairs(o: GroupOracle, elems, limit: int | None = 2000, seed: int = DEFAULT_SEED) -> list:
    """Strictly ordered pairs ``(a, b)`` among ``elems``, seeded subsample above ``limit``."""
    pairs = [(a, b) for a in elems for b in elems if o.lt(a, b)]
    if limit is not None and len(pairs) > limit:
        keep = sorted(random.Random(seed).sample(range(len(pairs)), limit))
        pairs = [pairs[i] for i in keep]
    return pairs


# -- structural checks --------------------------------------------------------------

def check_translations_monotone(o: GroupOracle, pairs, translators=None, seed=DEFAULT_SEED) -> CheckResult:
    """Left and right translations preserve the order on the sampled pairs."""
    pairs = [(a, b) for a, b in pairs if o.leq(a, b)]
    if translators is None:
        pool = {o.encode(o.identity): o.identity}
        for g in o.generators:
            pool.setdefault(o.encode(g), g)
            pool.setdefault(o.encode(o.inv(g)), o.inv(g))
        for a, b in pairs:
            pool.setdefault(o.encode(a), a)
            pool.setdefault(o.encode(b), b)
        translators = list(pool.values())
        if len(translators) > 40:
            rng = random.Random(seed)
            translators = translators[:1 + 2 * len(o.generators)] + rng.sample(translators, 30)
    e = o.encode
    for a, b in pairs:
        for g in translators:
            if not o.leq(o.mul(g, a), o.mul(g, b)):
                return failed("translations_monotone", {"a": e(a), "b": e(b), "g": e(g), "side": "left"},
                              seed, len(pairs))
            if not o.leq(o.mul(a, g), o.mul(b, g)):
                return failed("translations_monotone", {"a": e(a), "b": e(b), "g": e(g), "side": "right"},
                              seed, len(pairs))
    return passed("translations_monotone", seed, len(pairs), translators=len(translators))


def check_inversion_monotone(o: GroupOracle, pairs, seed=DEFAULT_SEED) -> CheckResult:
    """Inversion preserves the order; a failure here rules out a topological group."""
    pairs = [(a, b) for a, b in pairs if o.leq(a, b)]
    for a, b in pairs:
        if not o.leq(o.inv(a), o.inv(b)):
            return failed("inversion_monotone", {"a": o.encode(a), "b": o.encode(b)}, seed, len(pairs))
    return passed("inversion_monotone", seed, len(pairs))


def check_group_axioms(o: GroupOracle, sample, seed=DEFAULT_SEED, max_triples: int = 20000) -> CheckResult:
    e = o.encode
    one = o.identity
    for x in sample:
        if e(o.mul(one, x)) != e(x) or e(o.mul(x, one)) != e(x):
            return failed("group_axioms", {"law": "identity", "x": e(x)}, seed, len(sample))
        if e(o.mul(x, o.inv(x))) != e(one) or e(o.mul(o.inv(x), x)) != e(one):
            return failed("group_axioms", {"law": "inverse", "x": e(x)}, seed, len(sample))
    n = len(sample)
    if n**3 <= max_triples:
        triples = itertools.product(sample, repeat=3)
    else:
        rng = random.Random(seed)
        triples = ((rng.choice(sample), rng.choice(sample), rng.choice(sample)) for _ in range(max_triples))
    count = 0
    for x, y, z in triples:
        count += 1
        if e(o.mul(o.mul(x, y), z)) != e(o.mul(x, o.mul(y, z))):
            return failed("group_axioms", {"law": "associativity", "x": e(x), "y": e(y), "z": e(z)}, seed, n)
    return passed("group_axioms", seed, n, triples=count)


def check_codec(o: GroupOracle, sample) -> bool:
    return all(o.encode(o.decode(o.encode(x))) == o.encode(x) and o.decode(o.encode(x)) == x for x in sample)


def check_homomorphism(f, src: GroupOracle, dst: GroupOracle, sample, seed=DEFAULT_SEED,
                       max_pairs: int = 20000) -> CheckResult:
    """``f`` is multiplicative and order-preserving on sampled pairs."""
    pairs = list(itertools.product(sample, repeat=2))
    if len(pairs) > max_pairs:
        pairs = random.Random(seed).sample(pairs, max_pairs)
    hom_bad = mono_bad = None
    for a, b in pairs:
        if hom_bad is None and dst.encode(f(src.mul(a, b))) != dst.encode(dst.mul(f(a), f(b))):
            hom_bad = {"a": src.encode(a), "b": src.encode(b)}
        if mono_bad is None and src.leq(a, b) and not dst.leq(f(a), f(b)):
            mono_bad = {"a": src.encode(a), "b": src.encode(b)}
        if hom_bad and mono_bad:
            break
    stats = {"homomorphism": hom_bad is None, "monotone": mono_bad is None}
    if hom_bad or mono_bad:
        return failed("homomorphism", {"not_multiplicative": hom_bad, "not_monotone": mono_bad},
                      seed, len(pairs), **stats)
    return passed("homomorphism", seed, len(pairs), **stats)


# -- products -------------------------------------------------------------------

def product(oracles) -> GroupOracle:
    """Direct product with the componentwise order."""
    os_ = tuple(oracles)
    k = len(os_)

    def covers(x):
        parts = [o.covers_above(xi) for o, xi in zip(os_, x)]
        if any(c == UNSUPPORTED for c in parts if isinstance(c, str)):
            return UNSUPPORTED
        if any(isinstance(c, str) for c in parts):
            return DENSE
        out = []
        for i, ci in enumerate(parts):
            for y in ci:
                out.append(x[:i] + (y,) + x[i + 1:])
        return out

    gens = []
    for i, o in enumerate(os_):
        for g in o.generators:
            gens.append(tuple(g if j == i else os_[j].identity for j in range(k)))

    cards = [o.cardinality for o in os_]
    if all(c.startswith("finite") for c in cards):
        size = 1
        for c in cards:
            size *= int(c[7:-1])
        card = f"finite({size})"
    elif "continuum" in cards:
        card = "continuum"
    else:
        card = "countable"

    rand = None
    if all(o.random_element for o in os_):
        def rand(rng):
            return tuple(o.random_element(rng) for o in os_)

    box = None
    if all(o.box for o in os_):
        def box(d):
            return [tuple(t) for t in itertools.product(*(o.box(d) for o in os_))]

    comp = None
    if any(o.component for o in os_):
        def comp(x):
            return tuple(o.component(xi) if o.component else None for o, xi in zip(os_, x))

    return GroupOracle(
        name=" x ".join(o.name for o in os_),
        identity=tuple(o.identity for o in os_),
        mul=lambda x, y: tuple(o.mul(a, b) for o, a, b in zip(os_, x, y)),
        inv=lambda x: tuple(o.inv(a) for o, a in zip(os_, x)),
        leq=lambda x, y: all(o.leq(a, b) for o, a, b in zip(os_, x, y)),
        covers_above=covers,
        generators=tuple(gens),
        cardinality=card,
        encode=lambda x: json.dumps([o.encode(a) for o, a in zip(os_, x)]),
        decode=lambda s: tuple(o.decode(t) for o, t in zip(os_, json.loads(s))),
        random_element=rand,
        box=box,
        component=comp,
        abelian=all(o.abelian for o in os_),
        params={"factors": [o.name for o in os_]},
    )


# -- subsets ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubsetSpec:
    """A subset B given by membership, with optional constructive witnesses.

    ``lower_witness(x)`` returns a member below ``x``; ``upper_witness(x)`` a
    member above ``x``.  ``floor`` certifies that every member lies above it;
    ``elements`` enumerates a finite subset.
    """

    name: str
    member: Callable[[Any], bool]
    lower_witness: Callable[[Any], Any] | None = None
    upper_witness: Callable[[Any], Any] | None = None
    floor: Any = None
    elements: tuple | None = None
    countable: bool = True


def finite_subset(o: GroupOracle, elems, name: str = "finite") -> SubsetSpec:
    elems = tuple(elems)
    keys = {o.encode(x) for x in elems}
    return SubsetSpec(name, lambda x: o.encode(x) in keys, elements=elems)


def down_spec(o: GroupOracle, x, name: str | None = None) -> SubsetSpec:
    """U_x as a subset spec; ``x`` itself is a lower witness wherever one exists."""
    return SubsetSpec(name or f"U[{o.encode(x)}]", lambda y: o.leq(y, x))


def up_spec(o: GroupOracle, x, name: str | None = None) -> SubsetSpec:
    return SubsetSpec(name or f"F[{o.encode(x)}]", lambda y: o.leq(x, y), floor=x)


def product_subset(specs) -> SubsetSpec:
    specs = tuple(specs)

    def all_or_none(attr):
        fs = [getattr(s, attr) for s in specs]
        if any(f is None for f in fs):
            return None
        return lambda x: tuple(f(xi) for f, xi in zip(fs, x))

    floors = [s.floor for s in specs]
    elems = None
    if all(s.elements is not None for s in specs):
        elems = tuple(itertools.product(*(s.elements for s in specs)))
    return SubsetSpec(
        name=" x ".join(s.name for s in specs),
        member=lambda x: all(s.member(xi) for s, xi in zip(specs, x)),
        lower_witness=all_or_none("lower_witness"),
        upper_witness=all_or_none("upper_witness"),
        floor=None if any(f is None for f in floors) else tuple(floors),
        elements=elems,
        countable=all(s.countable for s in specs),
    )
