"""Concrete ordered groups: the integer and rational chains, integer lattices,
the Loewner order on symmetric matrices, GL_n ordered by |det|, stacked
antichains and disjoint unions of chains.

Every constructor returns a :class:`CatalogEntry` carrying the oracle, a table
of known invariants and the auxiliary subsets the law checks need.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import rational as R
from .errors import BadParameter, UnknownExample
from .oracle import DENSE, UNSUPPORTED, GroupOracle, SubsetSpec, neighbourhood, window
from .rational import psd_check

INFINITE = "infinite"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: dict
    oracle: GroupOracle
    expected: dict
    bounded: SubsetSpec  # feebly bounded, with a lower witness
    narrow: SubsetSpec  # countable A with X = A U_1, with an upper witness
    positive: Any  # some g > 1
    default_depth: int = 3
    extras: dict = field(default_factory=dict)

    def window(self, depth: int | None = None):
        return window(self.oracle, neighbourhood(self.oracle, self.default_depth if depth is None else depth))

    def summary(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "oracle": self.oracle.header(),
                "expected": dict(self.expected), "default_depth": self.default_depth,
                "bounded_subset": self.bounded.name, "narrow_subset": self.narrow.name}


def _expected(radius, width, connected, has_beat_points, abelian, countable, expected_fail=()):
    return {
        "radius": radius,
        "width": width,
        "connected": connected,
        "hyperconnected": connected,
        "has_beat_points": has_beat_points,
        "abelian": abelian,
        "countable": countable,
        # a continuum-sized group cannot be totally omega-narrow
        "expected_fail": sorted({"inversion_monotone", *expected_fail, *(() if countable else ("totally_omega_narrow",))}),
    }


def _frac(s):
    return Fraction(s)


def _rand_frac(rng):
    return Fraction(rng.randint(-240, 240), rng.choice([1, 2, 3, 4, 6, 8, 12]))


def _halves(d):
    return [Fraction(k, 2) for k in range(-2 * d, 2 * d + 1)]


def _floor(q):
    return Fraction(math.floor(q))


def _ceil(q):
    return Fraction(math.ceil(q))


# -- chains ---------------------------------------------------------------------

def int_chain() -> CatalogEntry:
    o = GroupOracle(
        name="int_chain",
        identity=0,
        mul=lambda a, b: a + b,
        inv=lambda a: -a,
        leq=lambda a, b: a <= b,
        covers_above=lambda a: [a + 1],
        generators=(1,),
        cardinality="countable",
        decode=int,
        random_element=lambda rng: rng.randint(-60, 60),
        box=lambda d: list(range(-d, d + 1)),
        abelian=True,
    )
    threes = SubsetSpec("multiples_of_3", lambda x: x % 3 == 0,
                        lower_witness=lambda x: x - x % 3, upper_witness=lambda x: x + (-x) % 3)
    return CatalogEntry("int_chain", {}, o, _expected(1, 1, True, True, True, True), threes, threes, 1)


def rat_chain() -> CatalogEntry:
    o = GroupOracle(
        name="rat_chain",
        identity=Fraction(0),
        mul=lambda a, b: a + b,
        inv=lambda a: -a,
        leq=lambda a, b: a <= b,
        covers_above=lambda a: DENSE,
        generators=(Fraction(1), Fraction(1, 2)),
        cardinality="countable",
        decode=_frac,
        random_element=_rand_frac,
        box=_halves,
        abelian=True,
    )
    ints = SubsetSpec("integers", lambda x: x.denominator == 1, lower_witness=_floor, upper_witness=_ceil)
    return CatalogEntry("rat_chain", {}, o, _expected(0, 1, True, False, True, True), ints, ints, Fraction(1))


# -- integer lattices -------------------------------------------------------------

def _tuple_codec(s):
    return tuple(int(t) for t in s.strip("()").split(",") if t.strip())


def _enc_tuple(x):
    return "(" + ",".join(str(v) for v in x) + ")"


def int_vectors(k: int = 2) -> CatalogEntry:
    k = _positive(k, "k")
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    o = GroupOracle(
        name="int_vectors",
        identity=(0,) * k,
        mul=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        inv=lambda a: tuple(-x for x in a),
        leq=lambda a, b: all(x <= y for x, y in zip(a, b)),
        covers_above=lambda a: [tuple(x + u for x, u in zip(a, e)) for e in unit],
        generators=tuple(unit),
        cardinality="countable",
        encode=_enc_tuple,
        decode=_tuple_codec,
        random_element=lambda rng: tuple(rng.randint(-40, 40) for _ in range(k)),
        box=lambda d: list(itertools.product(range(-d, d + 1), repeat=k)),
        abelian=True,
        params={"k": k},
    )
    diagonal = SubsetSpec("diagonal", lambda x: len(set(x)) == 1,
                          lower_witness=lambda x: (min(x),) * k, upper_witness=lambda x: (max(x),) * k)
    exp = _expected(k, 1 if k == 1 else INFINITE, True, k == 1, True, True)
    quadrant = SubsetSpec("nonnegative_orthant", lambda x: all(v >= 0 for v in x), floor=(0,) * k)
    return CatalogEntry("int_vectors", {"k": k}, o, exp, diagonal, diagonal, (1,) * k,
                        extras={"orthant": quadrant})


# -- matrices --------------------------------------------------------------------

def sym_loewner(n: int = 2) -> CatalogEntry:
    """Additive group of symmetric rational matrices, A <= B iff B - A is PSD."""
    n = _positive(n, "n")
    if n > R.PSD_MAX_SIZE:
        raise BadParameter(f"sym_loewner supports n <= {R.PSD_MAX_SIZE}")
    basis = []
    for i in range(n):
        for j in range(i, n):
            basis.append(R.add(R.unit(n, i, j), R.unit(n, j, i)) if i != j else R.unit(n, i, i))
    zero = R.zeros(n)

    def rand(rng):
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-5, 5)
        return R.matrix(m)

    def box(d):
        out = []
        for coeffs in itertools.product(range(-d, d + 1), repeat=len(basis)):
            m = zero
            for c, b in zip(coeffs, basis):
                if c:
                    m = R.add(m, R.scale(b, c))
            out.append(m)
        return out

    def gersh_low(x):
        return min(x[i][i] - sum(abs(x[i][j]) for j in range(n) if j != i) for i in range(n))

    def gersh_high(x):
        return max(x[i][i] + sum(abs(x[i][j]) for j in range(n) if j != i) for i in range(n))

    eye = R.identity(n)
    o = GroupOracle(
        name="sym_loewner",
        identity=zero,
        mul=R.add,
        inv=R.neg,
        leq=lambda a, b: psd_check(R.sub(b, a)),
        covers_above=lambda a: DENSE,
        generators=tuple(basis),
        cardinality="continuum",
        encode=R.encode,
        decode=R.decode,
        random_element=rand,
        box=box,
        abelian=True,
        params={"n": n},
    )
    scalars = SubsetSpec(
        "scalar_matrices",
        lambda x: all(x[i][j] == (x[0][0] if i == j else 0) for i in range(n) for j in range(n)),
        lower_witness=lambda x: R.scale(eye, gersh_low(x)),
        upper_witness=lambda x: R.scale(eye, gersh_high(x)),
    )
    exp = _expected(0, 1 if n == 1 else INFINITE, True, False, True, False)
    return CatalogEntry("sym_loewner", {"n": n}, o, exp, scalars, scalars, eye, default_depth=1)


def gl_det(n: int = 2) -> CatalogEntry:
    """Invertible rational matrices under multiplication; A <= B iff A = B or |det A| < |det B|."""
    n = _positive(n, "n")
    eye = R.identity(n)
    gens = [R.diag([2] + [1] * (n - 1))]
    if n >= 2:
        gens.append(R.add(eye, R.unit(n, 0, 1)))
        gens.append(R.add(eye, R.unit(n, 1, 0)))
        swap = [[int(j == (1 if i == 0 else 0 if i == 1 else i)) for j in range(n)] for i in range(n)]
        gens.append(R.matrix(swap))

    def absdet(a):
        return abs(R.det(a))

    def rand(rng):
        while True:
            m = R.matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            if R.det(m) != 0:
                return m

    def d1(q):
        return R.diag([q] + [1] * (n - 1))

    o = GroupOracle(
        name="gl_det",
        identity=eye,
        mul=R.mul,
        inv=R.inverse,
        leq=lambda a, b: a == b or absdet(a) < absdet(b),
        covers_above=lambda a: UNSUPPORTED,
        generators=tuple(gens),
        cardinality="continuum",
        encode=R.encode,
        decode=R.decode,
        random_element=rand,
        abelian=n == 1,
        params={"n": n},
    )
    first_axis = SubsetSpec(
        "diag(q,1,...,1)",
        lambda x: x[0][0] != 0 and x == d1(x[0][0]),
        lower_witness=lambda x: d1(absdet(x) / 2),
        upper_witness=lambda x: d1(absdet(x) * 2),
    )
    exp = _expected(UNSUPPORTED, INFINITE if n >= 2 else 1, True, False, n == 1, False)
    return CatalogEntry("gl_det", {"n": n}, o, exp, first_axis, first_axis, gens[0], default_depth=2)


def sl_antichain_sample(n: int, count: int) -> list:
    """``count`` distinct determinant-one matrices starting with the identity."""
    if n < 2 or count < 1:
        raise BadParameter("need n >= 2 and count >= 1")
    out = [R.identity(n)]
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    k = 1
    while len(out) < count:
        for i, j in offdiag:
            if len(out) == count:
                break
            out.append(R.add(R.identity(n), R.unit(n, i, j, k)))
        k = -k if k > 0 else -k + 1
    return out


# -- stacked antichains and disjoint chains ------------------------------------------

def _level_group(name, n, first, leq, covers, box, rand, component, params):
    gens = [(first(1), 0)] + ([(first(0), 1)] if n > 1 else [])
    return GroupOracle(
        name=name,
        identity=(first(0), 0),
        mul=lambda a, b: (a[0] + b[0], (a[1] + b[1]) % n),
        inv=lambda a: (-a[0], (-a[1]) % n),
        leq=leq,
        covers_above=covers,
        generators=tuple(gens),
        cardinality="countable",
        encode=lambda a: f"({a[0]},{a[1]})",
        decode=lambda s: (first(s.strip("()").split(",")[0]), int(s.strip("()").split(",")[1])),
        random_element=rand,
        box=box,
        component=component,
        abelian=True,
        params=params,
    )


def width_join(n: int = 2) -> CatalogEntry:
    """Z x Z_n ordered by level only: (a, b) < (c, d) iff a < c."""
    n = _positive(n, "n")
    o = _level_group(
        "width_join", n, int,
        leq=lambda x, y: x == y or x[0] < y[0],
        covers=lambda x: [(x[0] + 1, c) for c in range(n)],
        box=lambda d: [(i, b) for i in range(-d, d + 1) for b in range(n)],
        rand=lambda rng: (rng.randint(-40, 40), rng.randrange(n)),
        component=None,
        params={"n": n},
    )
    base = SubsetSpec(
        "slot_zero",
        lambda x: x[1] == 0,
        lower_witness=lambda x: (x[0] if x[1] == 0 else x[0] - 1, 0),
        upper_witness=lambda x: (x[0] if x[1] == 0 else x[0] + 1, 0),
    )
    exp = _expected(n, n, True, n == 1, True, True)
    return CatalogEntry("width_join", {"n": n}, o, exp, base, base, (1, 0))


def disjoint_chains_int(n: int = 2) -> CatalogEntry:
    """Z x Z_n ordered within each coset: (a, b) <= (c, d) iff a <= c and b = d."""
    n = _positive(n, "n")
    o = _level_group(
        "disjoint_chains_int", n, int,
        leq=lambda x, y: x[1] == y[1] and x[0] <= y[0],
        covers=lambda x: [(x[0] + 1, x[1])],
        box=lambda d: [(i, b) for i in range(-d, d + 1) for b in range(n)],
        rand=lambda rng: (rng.randint(-40, 40), rng.randrange(n)),
        component=lambda x: x[1],
        params={"n": n},
    )
    evens = SubsetSpec("even_first_coordinate", lambda x: x[0] % 2 == 0,
                       lower_witness=lambda x: (x[0] - x[0] % 2, x[1]),
                       upper_witness=lambda x: (x[0] + x[0] % 2, x[1]))
    fails = ["hyperconnected"] if n > 1 else []
    exp = _expected(1, n, n == 1, True, True, True, fails)
    return CatalogEntry("disjoint_chains_int", {"n": n}, o, exp, evens, evens, (1, 0))


def disjoint_chains_rat(n: int = 2) -> CatalogEntry:
    n = _positive(n, "n")
    o = _level_group(
        "disjoint_chains_rat", n, Fraction,
        leq=lambda x, y: x[1] == y[1] and x[0] <= y[0],
        covers=lambda x: DENSE,
        box=lambda d: [(q, b) for q in _halves(d) for b in range(n)],
        rand=lambda rng: (_rand_frac(rng), rng.randrange(n)),
        component=lambda x: x[1],
        params={"n": n},
    )
    ints = SubsetSpec("integer_first_coordinate", lambda x: x[0].denominator == 1,
                      lower_witness=lambda x: (_floor(x[0]), x[1]),
                      upper_witness=lambda x: (_ceil(x[0]), x[1]))
    fails = ["hyperconnected"] if n > 1 else []
    exp = _expected(0, n, n == 1, False, True, True, fails)
    return CatalogEntry("disjoint_chains_rat", {"n": n}, o, exp, ints, ints, (Fraction(1), 0))


# -- registry --------------------------------------------------------------------

BUILDERS = {
    "int_chain": (int_chain, {}),
    "rat_chain": (rat_chain, {}),
    "int_vectors": (int_vectors, {"k": 2}),
    "sym_loewner": (sym_loewner, {"n": 2}),
    "gl_det": (gl_det, {"n": 2}),
    "width_join": (width_join, {"n": 2}),
    "disjoint_chains_int": (disjoint_chains_int, {"n": 2}),
    "disjoint_chains_rat": (disjoint_chains_rat, {"n": 2}),
}


def _positive(v, name):
    try:
        v = int(v)
    except (TypeError, ValueError):
        raise BadParameter(f"{name} must be an integer, got {v!r}") from None
    if v < 1:
        raise BadParameter(f"{name} must be >= 1, got {v}")
    return v


def catalog_names() -> list[str]:
    return list(BUILDERS)


def catalog_build(name: str, params: dict | None = None) -> CatalogEntry:
    if name not in BUILDERS:
        raise UnknownExample(name)
    fn, defaults = BUILDERS[name]
    params = dict(params or {})
    unknown = set(params) - set(defaults)
    if unknown:
        raise BadParameter(f"{name} takes no parameter(s) {sorted(unknown)}")
    return fn(**{**defaults, **params})


# -- negative controls ---------------------------------------------------------------

def _int_oracle(name, leq):
    return GroupOracle(
        name=name, identity=0, mul=lambda a, b: a + b, inv=lambda a: -a, leq=leq,
        covers_above=lambda a: UNSUPPORTED, generators=(1,), cardinality="countable", decode=int,
        random_element=lambda rng: rng.randint(-30, 30), box=lambda d: list(range(-d, d + 1)), abelian=True,
    )


def broken_parity_int() -> GroupOracle:
    """Z where only even integers are ordered among themselves; translating by 1 breaks it."""
    return _int_oracle("broken_parity_int", lambda a, b: a == b or (a <= b and a % 2 == 0 and b % 2 == 0))


def broken_halfline_int() -> GroupOracle:
    """Z where only the non-positive integers form a chain."""
    return _int_oracle("broken_halfline_int", lambda a, b: a == b or a <= b <= 0)


def trivial_group() -> GroupOracle:
    return GroupOracle(
        name="trivial", identity=0, mul=lambda a, b: 0, inv=lambda a: 0, leq=lambda a, b: True,
        covers_above=lambda a: [], generators=(), cardinality="finite(1)", decode=int,
        random_element=lambda rng: 0, box=lambda d: [0], abelian=True,
    )
