"""Exhaustive search for order-compatible partial orders on small finite groups.

A partial order on ``{0..n-1}`` is stored as a 64-bit mask of its strict
relation: bit ``i*n + j`` is set when ``i < j``.  Relabelling by a permutation
is a bit shuffle, which numpy applies to whole arrays of masks at once.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import poset as P
from .errors import SizeLimitExceeded

MAX_POSET_SIZE = 6
MAX_GROUP_ORDER = 6


# -- group tables -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    name: str
    elements: tuple  # display names, identity first
    table: tuple  # table[a][b] = index of a*b

    def __post_init__(self):
        self.verify()

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == 0)

    def verify(self):
        n = len(self.elements)
        t = np.array(self.table)
        if t.shape != (n, n):
            raise ValueError(f"{self.name}: table is not {n}x{n}")
        full = np.arange(n)
        if any(not np.array_equal(np.sort(t[i]), full) or not np.array_equal(np.sort(t[:, i]), full)
               for i in range(n)):
            raise ValueError(f"{self.name}: not a Latin square")
        if not (np.array_equal(t[0], full) and np.array_equal(t[:, 0], full)):
            raise ValueError(f"{self.name}: element 0 is not the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise ValueError(f"{self.name}: not associative at {(a, b, c)}")

    def left(self, g: int) -> tuple:
        return tuple(self.table[g][x] for x in range(self.order))

    def right(self, g: int) -> tuple:
        return tuple(self.table[x][g] for x in range(self.order))


def cyclic(n: int) -> GroupTable:
    names = ("e",) + tuple(f"a{k}" if k > 1 else "a" for k in range(1, n))
    return GroupTable(f"C{n}", names, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def klein_four() -> GroupTable:
    return GroupTable("V4", ("e", "a", "b", "ab"), tuple(tuple(i ^ j for j in range(4)) for i in range(4)))


def symmetric_three() -> GroupTable:
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    names = ("e", "(01)", "(12)", "(02)", "(012)", "(021)")
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms)
    return GroupTable("S3", names, table)


def small_groups(max_order: int = MAX_GROUP_ORDER) -> list[GroupTable]:
    """All groups of order <= max_order up to isomorphism (at most 6)."""
    if max_order > MAX_GROUP_ORDER:
        raise SizeLimitExceeded(f"group tables are embedded only up to order {MAX_GROUP_ORDER}")
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n))
        if n == 4:
            out.append(klein_four())
        if n == 6:
            out.append(symmetric_three())
    return out


# -- labelled posets as bit masks ------------------------------------------------------

def _natural_masks(n: int) -> list[int]:
    """Strict orders in which i < j implies i < j as integers.

    Element k is added on top of a down-closed set of its predecessors.
    """
    masks = [0]
    for k in range(1, n):
        nxt = []
        for m in masks:
            below = [[i for i in range(k) if m >> (i * n + j) & 1] for j in range(k)]
            for size in range(k + 1):
                for pred in itertools.combinations(range(k), size):
                    ps = set(pred)
                    if all(set(below[j]) <= ps for j in pred):
                        add = sum(1 << (i * n + k) for i in pred)
                        nxt.append(m | add)
        masks = nxt
    return masks


def permute_masks(masks: np.ndarray, perm, n: int) -> np.ndarray:
    """Relabel every strict-order mask by ``i -> perm[i]``."""
    out = np.zeros_like(masks)
    one = np.uint64(1)
    for i in range(n):
        for j in range(n):
            if i != j:
                bit = (masks >> np.uint64(i * n + j)) & one
                out |= bit << np.uint64(perm[i] * n + perm[j])
    return out


@lru_cache(maxsize=None)
def labeled_poset_masks(n: int) -> np.ndarray:
    """Sorted masks of every labelled partial order on ``n`` points."""
    if n < 0 or n > MAX_POSET_SIZE:
        raise SizeLimitExceeded(f"labelled poset enumeration supports n <= {MAX_POSET_SIZE}")
    base = np.array(_natural_masks(n) if n else [0], dtype=np.uint64)
    images = [permute_masks(base, perm, n) for perm in itertools.permutations(range(n))]
    out = np.unique(np.concatenate(images))
    out.flags.writeable = False
    return out


def mask_to_poset(mask: int, n: int, labels=None) -> P.FinitePoset:
    labels = list(range(n)) if labels is None else list(labels)
    leq = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and int(mask) >> (i * n + j) & 1:
                leq[i, j] = True
    return P.FinitePoset(labels, leq)


def enumerate_labeled_posets(n: int):
    """Yield every labelled poset on ``0..n-1`` exactly once."""
    for m in labeled_poset_masks(n):
        yield mask_to_poset(m, n)


def count_labeled_posets(n: int) -> int:
    return len(labeled_poset_masks(n))


# -- monotone orders -----------------------------------------------------------------

def monotone_masks(g: GroupTable, require_inversion: bool = False) -> np.ndarray:
    """Masks invariant under every left and right translation (and inversion if asked)."""
    n = g.order
    masks = labeled_poset_masks(n)
    keep = np.ones(len(masks), dtype=bool)
    perms = {g.left(a) for a in range(n)} | {g.right(a) for a in range(n)}
    for perm in sorted(perms):
        keep &= permute_masks(masks, perm, n) == masks
    if require_inversion:
        # inversion is a bijection, so monotone means it maps the relation onto itself
        inv = tuple(g.inverse(a) for a in range(n))
        keep &= permute_masks(masks, inv, n) == masks
    return masks[keep]


def monotone_orders(g: GroupTable, require_inversion: bool = False) -> list[P.FinitePoset]:
    return [mask_to_poset(m, g.order, g.elements) for m in monotone_masks(g, require_inversion)]


def multiplication_monotone(g: GroupTable, mask: int) -> bool:
    """a <= b and c <= d imply ac <= bd, checked over all pairs."""
    n = g.order
    le = [[i == j or bool(int(mask) >> (i * n + j) & 1) for j in range(n)] for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(n) if le[a][b]]
    return all(le[g.mul(a, c)][g.mul(b, d)] for a, b in pairs for c, d in pairs)


def translations_monotone(g: GroupTable, mask: int) -> bool:
    n = g.order
    le = [[i == j or bool(int(mask) >> (i * n + j) & 1) for j in range(n)] for i in range(n)]
    return all(le[g.mul(c, a)][g.mul(c, b)] and le[g.mul(a, c)][g.mul(b, c)]
               for a in range(n) for b in range(n) if le[a][b] for c in range(n))


# -- reports ---------------------------------------------------------------------------

@dataclass
class EnumerationReport:
    group: str
    order: int
    posets_examined: int
    monotone_orders: int
    survivors: list = field(default_factory=list)  # non-discrete monotone orders, as relation pairs
    connected_survivors: list = field(default_factory=list)
    audit_passed: bool = True
    runtime: float | None = None

    @property
    def confirmed(self) -> bool:
        return not self.survivors and self.audit_passed

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        d["confirmed"] = self.confirmed
        if not timing:
            d.pop("runtime")
        return d


def _relation_pairs(g: GroupTable, mask: int) -> list:
    n = g.order
    return [[g.elements[i], g.elements[j]] for i in range(n) for j in range(n)
            if i != j and int(mask) >> (i * n + j) & 1]


def _report(g: GroupTable, topological: bool) -> EnumerationReport:
    t0 = time.perf_counter()
    n = g.order
    found = monotone_masks(g, require_inversion=topological)
    audit = all(multiplication_monotone(g, m) for m in found)
    if topological:
        inv = [g.inverse(a) for a in range(n)]
        for m in found:
            p = mask_to_poset(m, n)
            audit = audit and all(p.leq[inv[a], inv[b]] for a in range(n) for b in range(n) if p.leq[a, b])
    nondiscrete = [m for m in found if m != 0]
    connected = [m for m in found if P.is_connected(mask_to_poset(m, n))]
    return EnumerationReport(
        group=g.name,
        order=n,
        posets_examined=count_labeled_posets(n),
        monotone_orders=len(found),
        survivors=[_relation_pairs(g, m) for m in nondiscrete],
        connected_survivors=[{"elements": list(g.elements), "relations": _relation_pairs(g, m)} for m in connected]
        if topological else [],
        audit_passed=bool(audit),
        runtime=round(time.perf_counter() - t0, 4),
    )


def verify_discreteness_theorem(max_order: int = MAX_GROUP_ORDER) -> list[EnumerationReport]:
    """Every order making multiplication monotone on a finite group is discrete."""
    return [_report(g, topological=False) for g in small_groups(max_order)]


def verify_topgroup_triviality(max_order: int = MAX_GROUP_ORDER) -> list[EnumerationReport]:
    """Requiring monotone inversion too, only the one-point group leaves a connected order."""
    return [_report(g, topological=True) for g in small_groups(max_order)]


def theorem_holds(reports, topological: bool = False) -> bool:
    ok = all(r.confirmed for r in reports)
    if topological:
        connected = [r for r in reports if r.connected_survivors]
        ok = ok and all(r.order == 1 for r in connected)
    return ok
