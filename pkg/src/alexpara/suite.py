"""Run named laws against catalog examples and compare with the expected table."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from . import laws as L
from .catalog import CatalogEntry, catalog_build
from .oracle import (DEFAULT_SAMPLE_DEPTH, DEFAULT_SAMPLES, DEFAULT_SEED, ball, check_group_axioms,
                     check_inversion_monotone, check_translations_monotone, down_spec, order_pairs,
                     sample_elements)
from .result import FAIL, INAPPLICABLE, PASS, CheckResult

OK = "ok"
EXPECTED_FAIL = "expected_fail"
UNEXPECTED_FAIL = "unexpected_fail"
UNEXPECTED_PASS = "unexpected_pass"
SKIPPED = "inapplicable"

# exact rational arithmetic is slow; these keep a full matrix run to seconds
PAIR_LIMIT = 600
TRIPLE_LIMIT = 5000


@dataclass
class LawContext:
    entry: CatalogEntry
    depth: int
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    budget: int | None = None

    @property
    def oracle(self):
        return self.entry.oracle

    @cached_property
    def window(self):
        return self.entry.window(self.depth)

    @cached_property
    def small_window(self):
        return self.entry.window(min(self.depth, 2))

    @cached_property
    def sample(self):
        return sample_elements(self.oracle, self.samples, self.seed, min(self.depth, DEFAULT_SAMPLE_DEPTH))

    @cached_property
    def pairs(self):
        return order_pairs(self.oracle, self.sample, PAIR_LIMIT, self.seed)

    @cached_property
    def bound_pairs(self):
        near = ball(self.oracle, 2)
        pairs = [(x, y) for x in near for y in near]
        if len(pairs) > 300:
            pairs = random.Random(self.seed).sample(pairs, 300)
        return pairs


def _homogeneity(ctx):
    o = ctx.oracle
    shifts = [ctx.entry.positive, *o.generators]
    results = [L.law_translation_homogeneity(o, ctx.window, x) for x in shifts]
    for r in results:
        if r.status != PASS:
            return r
    r = results[0]
    r.witness = {"x": [o.encode(x) for x in shifts]}
    r.samples_used = sum(q.samples_used for q in results)
    return r


def _chain(ctx):
    o, g = ctx.oracle, ctx.entry.positive
    return [o.power(g, 3), o.power(g, 2), g, o.identity]


def _subordinated(ctx):
    o = ctx.oracle
    u1 = down_spec(o, o.identity, "U_1")
    return L.law_subordinated(o, L.SubordinatedFamily((u1,)), u1, ctx.sample)


LAWS = {
    "group_axioms": lambda c: check_group_axioms(c.oracle, c.sample[:80], c.seed, TRIPLE_LIMIT),
    "translations_monotone": lambda c: check_translations_monotone(c.oracle, c.pairs, seed=c.seed),
    "inversion_monotone": lambda c: check_inversion_monotone(c.oracle, c.pairs, c.seed),
    "inverse_flip": lambda c: L.law_inverse_flip(c.oracle, c.sample),
    "opposite_identity_neighborhoods": lambda c: L.law_opposite_identity_neighborhoods(c.oracle, c.window),
    "open_inverse_closed": lambda c: L.law_open_inverse_closed(c.oracle, c.small_window),
    "no_torsion_near_identity": lambda c: L.law_no_torsion_near_identity(c.oracle, c.window),
    "translation_homogeneity": _homogeneity,
    "beat_dichotomy": lambda c: L.law_beat_dichotomy(c.oracle, c.window),
    "hyperconnected": lambda c: L.law_directed_iff_hyperconnected(c.oracle, c.bound_pairs, c.budget),
    "2_pseudocompact": lambda c: L.law_2_pseudocompact(c.oracle, _chain(c)),
    "feebly_bounded": lambda c: L.feebly_bounded_check(c.oracle, c.entry.bounded, c.sample, c.budget),
    "product_feebly_bounded": lambda c: L.law_product_feebly_bounded(
        [c.oracle] * 2, [c.entry.bounded] * 2, count=c.samples, budget=c.budget, seed=c.seed),
    "product_set_feebly_bounded": lambda c: L.law_product_set_feebly_bounded(
        c.oracle, c.entry.bounded, c.entry.bounded, c.sample),
    "subordinated": _subordinated,
    "omega_narrow": lambda c: L.law_omega_narrow(c.oracle, c.entry.narrow, c.sample, c.budget),
    "totally_omega_narrow": lambda c: L.law_totally_omega_narrow(c.oracle),
    "unbounded_height": lambda c: L.law_unbounded_height(c.oracle, c.entry.positive, 10),
    "radius_relations": lambda c: L.law_radius_relations(c.oracle, c.window, c.sample),
    "classification": lambda c: L.law_classification(c.oracle, c.window),
}

LAW_IDS = tuple(LAWS)


def outcome(result: CheckResult, expected_fail) -> str:
    expected = result.law_id in expected_fail
    if result.status == INAPPLICABLE:
        return SKIPPED
    if result.status == FAIL:
        return EXPECTED_FAIL if expected else UNEXPECTED_FAIL
    return UNEXPECTED_PASS if expected else OK


def run_law(law_id: str, ctx: LawContext) -> CheckResult:
    if law_id not in LAWS:
        raise KeyError(law_id)
    r = LAWS[law_id](ctx)
    r.law_id = law_id
    r.seed = ctx.seed
    return r


def _run_isolated(args):
    name, params, law_id, depth, seed, samples, budget = args
    entry = catalog_build(name, params)
    return run_law(law_id, LawContext(entry, depth, seed, samples, budget)).to_dict()


def run_suite(name: str, params: dict | None = None, law_ids=LAW_IDS, depth: int | None = None,
              seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES, budget: int | None = None,
              workers: int = 1) -> list[dict]:
    """Run laws on one example; each record carries the result and its outcome.

    With ``workers > 1`` every law runs in its own process on a freshly built
    oracle; records come back in ``law_ids`` order either way.
    """
    entry = catalog_build(name, params)
    depth = entry.default_depth if depth is None else depth
    law_ids = list(law_ids)
    for law_id in law_ids:
        if law_id not in LAWS:
            raise KeyError(law_id)
    if workers > 1:
        jobs = [(name, dict(params or {}), law_id, depth, seed, samples, budget) for law_id in law_ids]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [CheckResult.from_dict(d) for d in pool.map(_run_isolated, jobs)]
    else:
        ctx = LawContext(entry, depth, seed, samples, budget)
        results = [run_law(law_id, ctx) for law_id in law_ids]
    fails = entry.expected["expected_fail"]
    return [{"result": r, "outcome": outcome(r, fails)} for r in results]


def suite_ok(records) -> bool:
    return all(rec["outcome"] in (OK, EXPECTED_FAIL, SKIPPED) for rec in records)
