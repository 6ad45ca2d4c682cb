"""Finite posets viewed as finite T0 Alexandroff spaces.

Open sets are down-sets, so the minimal open set of ``x`` is
``down_set(p, [x])`` and the minimal closed set is ``up_set(p, [x])``.
The relation is a dense, read-only boolean matrix; ``leq[i, j]`` means
``elements[i] <= elements[j]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .errors import CycleDetected, NotAPartialOrder, SizeLimitExceeded, UnknownLabel

Label = Hashable


def _bool_matmul(a, b):
    # float32 BLAS is exact for counts below 2**24
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


class FinitePoset:
    """Immutable finite partial order on a tuple of distinct labels."""

    def __init__(self, elements: Iterable[Label], leq, check: bool = True):
        elements = tuple(elements)
        n = len(elements)
        leq = np.array(leq, dtype=bool).reshape(n, n) if n else np.zeros((0, 0), bool)
        leq.flags.writeable = False
        self.elements = elements
        self.leq = leq
        self.index = {e: i for i, e in enumerate(elements)}
        if len(self.index) != n:
            raise ValueError("poset labels must be distinct")
        if check:
            self._validate()

    def _validate(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise NotAPartialOrder("relation is not reflexive")
        if np.any(leq & leq.T & ~np.eye(len(self), dtype=bool)):
            raise CycleDetected("relation is not antisymmetric")
        if np.any(_bool_matmul(leq, leq) & ~leq):
            raise NotAPartialOrder("relation is not transitive")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self):
        edges = ", ".join(f"{a!r}<{b!r}" for a, b in covers(self).edges)
        return f"FinitePoset({list(self.elements)!r}; {edges})"

    @property
    def is_empty(self) -> bool:
        return len(self.elements) == 0

    def idx(self, x) -> int:
        try:
            return self.index[x]
        except (KeyError, TypeError):
            raise UnknownLabel(x) from None

    def indices(self, xs: Iterable[Label]) -> list[int]:
        return [self.idx(x) for x in xs]

    def le(self, x, y) -> bool:
        return bool(self.leq[self.idx(x), self.idx(y)])

    @cached_property
    def lt(self):
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        lt.flags.writeable = False
        return lt

    @cached_property
    def cover_matrix(self):
        """``cover_matrix[i, j]`` iff ``elements[j]`` covers ``elements[i]``."""
        lt = self.lt
        c = lt & ~_bool_matmul(lt, lt)
        c.flags.writeable = False
        return c

    @cached_property
    def linear_extension(self):
        # x < y implies strictly fewer elements below x
        return np.argsort(self.leq.sum(axis=0), kind="stable")

    @cached_property
    def heights(self):
        h = np.zeros(len(self), dtype=np.int64)
        lt = self.lt
        for i in self.linear_extension:
            below = lt[:, i]
            if below.any():
                h[i] = h[below].max() + 1
        h.flags.writeable = False
        return h

    def subposet(self, xs: Iterable[Label]) -> "FinitePoset":
        """Induced subposet, listed in this poset's element order."""
        ids = sorted(set(self.indices(xs)))
        return self._sub(ids)

    def _sub(self, ids) -> "FinitePoset":
        ids = list(ids)
        return FinitePoset([self.elements[i] for i in ids], self.leq[np.ix_(ids, ids)], check=False)

    def relabel(self, mapping) -> "FinitePoset":
        if callable(mapping):
            return FinitePoset([mapping(e) for e in self.elements], self.leq, check=False)
        return FinitePoset([mapping[e] for e in self.elements], self.leq, check=False)


@dataclass(frozen=True)
class CoverGraph:
    nodes: tuple
    edges: tuple  # (x, y) with x covered by y


def _closure(leq):
    leq = leq.copy()
    for k in range(len(leq)):
        rows = leq[:, k]
        if rows.any():
            leq[rows] |= leq[k]
    return leq


def from_relation_pairs(elements: Sequence[Label], pairs: Iterable[tuple]) -> FinitePoset:
    """Poset generated by the reflexive-transitive closure of ``pairs``."""
    elements = tuple(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("poset labels must be distinct")
    n = len(elements)
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownLabel(x)
        if a == b:
            raise CycleDetected(f"self-loop on {a!r}")
        leq[index[a], index[b]] = True
    leq = _closure(leq)
    bad = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(bad):
        i, j = bad[0]
        raise CycleDetected(f"{elements[i]!r} and {elements[j]!r} lie on a cycle")
    return FinitePoset(elements, leq, check=False)


def from_cover_pairs(elements: Sequence[Label], covers: Iterable[tuple]) -> FinitePoset:
    """Build a poset from cover pairs; redundant pairs are absorbed by the closure."""
    return from_relation_pairs(elements, covers)


def chain(labels: Sequence[Label]) -> FinitePoset:
    return from_cover_pairs(labels, zip(labels, labels[1:]))


def antichain(labels: Sequence[Label]) -> FinitePoset:
    return from_cover_pairs(labels, [])


# -- minimal open / closed sets ---------------------------------------------

def _mask(p, xs):
    m = np.zeros(len(p), dtype=bool)
    m[p.indices(xs)] = True
    return m


def _labels(p, mask):
    return frozenset(p.elements[i] for i in np.flatnonzero(mask))


def down_set(p: FinitePoset, xs: Iterable[Label]) -> frozenset:
    """U_S: everything below some member of ``xs``."""
    m = _mask(p, xs)
    return _labels(p, p.leq[:, m].any(axis=1))


def up_set(p: FinitePoset, xs: Iterable[Label]) -> frozenset:
    """F_S: everything above some member of ``xs``."""
    m = _mask(p, xs)
    return _labels(p, p.leq[m].any(axis=0))


def star(p: FinitePoset, xs: Iterable[Label]) -> frozenset:
    xs = list(xs)
    return down_set(p, xs) | up_set(p, xs)


def is_down_set(p: FinitePoset, xs: Iterable[Label]) -> bool:
    m = _mask(p, xs)
    return not np.any(p.leq[:, m].any(axis=1) & ~m)


def is_up_set(p: FinitePoset, xs: Iterable[Label]) -> bool:
    m = _mask(p, xs)
    return not np.any(p.leq[m].any(axis=0) & ~m)


def is_antichain(p: FinitePoset, xs: Iterable[Label]) -> bool:
    ids = p.indices(xs)
    return not p.lt[np.ix_(ids, ids)].any()


def is_chain(p: FinitePoset) -> bool:
    return bool((p.leq | p.leq.T).all())


# -- Hasse diagram ------------------------------------------------------------

def covers(p: FinitePoset) -> CoverGraph:
    e = p.elements
    edges = tuple((e[i], e[j]) for i, j in np.argwhere(p.cover_matrix))
    return CoverGraph(nodes=e, edges=edges)


def upper_covers(p: FinitePoset, x) -> list:
    return [p.elements[j] for j in np.flatnonzero(p.cover_matrix[p.idx(x)])]


def lower_covers(p: FinitePoset, x) -> list:
    return [p.elements[i] for i in np.flatnonzero(p.cover_matrix[:, p.idx(x)])]


# -- width, height and chains -------------------------------------------------

def _matching(p):
    """Maximum matching of the strict-order bipartite graph; ``m[i]`` is the
    successor of ``i`` in its chain or -1."""
    n = len(p)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    graph = csr_matrix(p.lt.astype(np.int8))
    return maximum_bipartite_matching(graph, perm_type="column")


def _max_antichain_ids(p):
    n = len(p)
    match = _matching(p)
    matched_left = match >= 0
    right_owner = np.full(n, -1)
    right_owner[match[matched_left]] = np.flatnonzero(matched_left)
    # alternating search from free left vertices (Konig)
    left_z = ~matched_left
    right_z = np.zeros(n, dtype=bool)
    frontier = list(np.flatnonzero(left_z))
    lt = p.lt
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(lt[u] & ~right_z):
                if v == match[u]:
                    continue
                right_z[v] = True
                w = right_owner[v]
                if w >= 0 and not left_z[w]:
                    left_z[w] = True
                    nxt.append(w)
        frontier = nxt
    # cover = (L \ Z) u (R n Z); antichain = elements with neither copy covered
    return np.flatnonzero(left_z & ~right_z)


def maximum_antichain(p: FinitePoset) -> list:
    """A maximum-size antichain, in element order."""
    return [p.elements[i] for i in _max_antichain_ids(p)]


def width(p: FinitePoset) -> int:
    """Size of a maximum antichain (0 for the empty poset)."""
    return len(p) - int((_matching(p) >= 0).sum())


def chain_decomposition(p: FinitePoset) -> list[list]:
    """A minimum chain cover, each chain listed bottom to top."""
    match = _matching(p)
    has_pred = np.zeros(len(p), dtype=bool)
    has_pred[match[match >= 0]] = True
    chains = []
    for start in np.flatnonzero(~has_pred):
        c, i = [], start
        while i >= 0:
            c.append(p.elements[i])
            i = match[i]
        chains.append(c)
    return chains


def maximal_antichain_through(p: FinitePoset, x) -> list:
    """A maximum-size antichain among those containing ``x``."""
    i = p.idx(x)
    free = ~(p.leq[i] | p.leq[:, i])
    sub = p._sub(np.flatnonzero(free))
    chosen = set(maximum_antichain(sub)) | {x}
    return [e for e in p.elements if e in chosen]


def height(p: FinitePoset) -> int:
    """Length of a longest chain minus one (0 for the empty poset)."""
    return int(p.heights.max()) if len(p) else 0


def height_of(p: FinitePoset, x) -> int:
    return int(p.heights[p.idx(x)])


def levels(p: FinitePoset) -> list[list]:
    h = p.heights
    return [[p.elements[i] for i in np.flatnonzero(h == k)] for k in range(height(p) + 1)] if len(p) else []


# -- connectivity ---------------------------------------------------------------

def components(p: FinitePoset) -> list[frozenset]:
    """Path components: classes of the zigzag (comparability) relation."""
    if len(p) == 0:
        return []
    k, lab = connected_components(csr_matrix((p.leq | p.leq.T).astype(np.int8)), directed=False)
    order = []
    for c in lab:
        if c not in order:
            order.append(c)
    return [_labels(p, lab == c) for c in order]


def is_connected(p: FinitePoset) -> bool:
    return len(components(p)) <= 1


def is_hyperconnected(p: FinitePoset) -> bool:
    """Every pair of minimal open sets meets."""
    return bool(_bool_matmul(p.leq.T, p.leq).all())


def is_ultraconnected(p: FinitePoset) -> bool:
    """Every pair of minimal closed sets meets."""
    return bool(_bool_matmul(p.leq, p.leq.T).all())


def is_directed(p: FinitePoset) -> bool:
    leq = p.leq
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if not np.any(leq[i] & leq[j]):
                return False
    return True


# -- constructions --------------------------------------------------------------

def opposite(p: FinitePoset) -> FinitePoset:
    return FinitePoset(p.elements, p.leq.T, check=False)


def join(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Non-Hausdorff join: every element of ``p`` lies below every element of ``q``.

    On a label clash both sides are tagged, ``(0, x)`` and ``(1, y)``.
    """
    left, right = p.elements, q.elements
    if set(left) & set(right):
        left = tuple((0, x) for x in left)
        right = tuple((1, y) for y in right)
    n, m = len(p), len(q)
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = p.leq
    leq[n:, n:] = q.leq
    leq[:n, n:] = True
    return FinitePoset(left + right, leq, check=False)


def iterated_join(parts: Sequence[FinitePoset]) -> FinitePoset:
    out = parts[0]
    for q in parts[1:]:
        out = join(out, q)
    return out


# -- homotopy probes -----------------------------------------------------------

def beat_points(p: FinitePoset) -> list[tuple]:
    """All ``(x, kind)`` with kind ``"down"`` (one lower cover) or ``"up"`` (one upper cover)."""
    c = p.cover_matrix
    n_lower = c.sum(axis=0)
    n_upper = c.sum(axis=1)
    out = []
    for i, x in enumerate(p.elements):
        if n_lower[i] == 1:
            out.append((x, "down"))
        if n_upper[i] == 1:
            out.append((x, "up"))
    return out


def core(p: FinitePoset) -> FinitePoset:
    """Delete beat points, lowest index first, until none remain."""
    ids = list(range(len(p)))
    while True:
        sub = p._sub(ids)
        c = sub.cover_matrix
        beat = (c.sum(axis=0) == 1) | (c.sum(axis=1) == 1)
        hits = np.flatnonzero(beat)
        if len(hits) == 0:
            return sub
        del ids[hits[0]]


def chain_counts(p: FinitePoset) -> list[int]:
    """``counts[k]`` is the number of chains with ``k + 1`` elements."""
    lt = p.lt
    counts = []
    f = [1] * len(p)
    while any(f):
        counts.append(sum(f))
        g = [0] * len(p)
        for i in p.linear_extension:
            g[i] = sum(f[j] for j in np.flatnonzero(lt[:, i]))
        f = g
    return counts


def euler_characteristic(p: FinitePoset) -> int:
    """Euler characteristic of the order complex."""
    # g[x] = signed count of chains with top x = 1 - sum_{y<x} g[y]
    g = [0] * len(p)
    lt = p.lt
    for i in p.linear_extension:
        g[i] = 1 - sum(g[j] for j in np.flatnonzero(lt[:, i]))
    return sum(g)


def is_iterated_antichain_join(p: FinitePoset) -> int | None:
    """``n`` if ``p`` is a join of n-antichains stacked by height, else None."""
    if len(p) == 0:
        return None
    h = p.heights
    lv = [np.flatnonzero(h == k) for k in range(height(p) + 1)]
    n = len(lv[0])
    if any(len(level) != n for level in lv):
        return None
    c = p.cover_matrix
    for below, level in zip(lv, lv[1:]):
        expect = np.zeros(len(p), dtype=bool)
        expect[below] = True
        for i in level:
            if not np.array_equal(c[:, i], expect):
                return None
    return n


# -- isomorphism ----------------------------------------------------------------

def _signatures(p):
    c = p.cover_matrix
    return list(zip(p.heights.tolist(), p.leq.sum(axis=0).tolist(), p.leq.sum(axis=1).tolist(),
                    c.sum(axis=0).tolist(), c.sum(axis=1).tolist()))


def find_isomorphism(p: FinitePoset, q: FinitePoset, limit: int = 40) -> dict | None:
    """An order isomorphism ``p -> q`` as a label dict, or None."""
    n = len(p)
    if n != len(q):
        return None
    if n > limit:
        raise SizeLimitExceeded(f"isomorphism search limited to {limit} elements, got {n}")
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return None
    order = list(p.linear_extension)
    cands = {i: [j for j in range(n) if sq[j] == sp[i]] for i in range(n)}
    lp, lq = p.leq, q.leq
    image = {}
    used = set()

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            if all(lp[a, i] == lq[b, j] and lp[i, a] == lq[j, b] for a, b in image.items()):
                image[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del image[i]
                used.discard(j)
        return False

    if not extend(0):
        return None
    return {p.elements[i]: q.elements[j] for i, j in image.items()}


def is_isomorphic(p: FinitePoset, q: FinitePoset, limit: int = 40) -> bool:
    return find_isomorphism(p, q, limit) is not None


# -- down-set enumeration -------------------------------------------------------

def iter_antichains(p: FinitePoset, limit: int | None = None):
    """Yield antichains (index tuples) by increasing size, at most ``limit`` of them."""
    comparable = p.leq | p.leq.T
    count = 0
    layer = [()]
    while layer:
        nxt = []
        for a in layer:
            if limit is not None and count >= limit:
                return
            yield a
            count += 1
            start = a[-1] + 1 if a else 0
            for j in range(start, len(p)):
                if not any(comparable[i, j] for i in a):
                    nxt.append(a + (j,))
        layer = nxt


def iter_down_sets(p: FinitePoset, limit: int | None = None):
    """Yield down-sets as boolean masks, one per antichain of maximal elements."""
    for a in iter_antichains(p, limit):
        m = np.zeros(len(p), dtype=bool)
        if a:
            m = p.leq[:, list(a)].any(axis=1)
        yield m


# -- summary, JSON and DOT ------------------------------------------------------

def invariants(p: FinitePoset) -> dict:
    return {
        "size": len(p),
        "empty": p.is_empty,
        "width": width(p),
        "height": height(p),
        "connected": is_connected(p),
        "hyperconnected": is_hyperconnected(p),
        "ultraconnected": is_ultraconnected(p),
        "directed": is_directed(p),
        "euler_characteristic": euler_characteristic(p),
        "beat_points": len(beat_points(p)),
        "core_size": len(core(p)),
        "iterated_antichain_join": is_iterated_antichain_join(p),
    }


def to_json_dict(p: FinitePoset) -> dict:
    names = [str(e) for e in p.elements]
    if len(set(names)) != len(names):
        raise ValueError("labels are not distinct as strings")
    edges = [[str(a), str(b)] for a, b in covers(p).edges]
    return {"elements": names, "covers": edges}


def from_json_dict(data: dict) -> FinitePoset:
    return from_cover_pairs(list(data["elements"]), [tuple(e) for e in data["covers"]])


def dumps(p: FinitePoset, **kw) -> str:
    return json.dumps(to_json_dict(p), **kw)


def loads(s: str) -> FinitePoset:
    return from_json_dict(json.loads(s))


def _dot_id(s) -> str:
    s = str(s).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(p: FinitePoset, highlight: Iterable[Label] = (), name: str = "hasse", comment: str | None = None) -> str:
    """Hasse diagram in DOT; bottom-to-top, one rank per height level."""
    hl = set(highlight)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    if comment:
        lines.insert(1, f"  comment={_dot_id(comment)};")
    for x in p.elements:
        attrs = ' [style=filled, fillcolor="#f4a582", penwidth=2]' if x in hl else ""
        lines.append(f"  {_dot_id(x)}{attrs};")
    for level in levels(p):
        lines.append("  { rank=same; " + " ".join(_dot_id(x) + ";" for x in level) + " }")
    for a, b in covers(p).edges:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"

