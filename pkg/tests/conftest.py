import random

import numpy as np
import pytest
from hypothesis import strategies as st

from alexpara import poset as P


def random_poset(n, density, seed):
    rng = random.Random(seed)
    labels = [f"e{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    p = P.from_relation_pairs(labels, pairs)
    perm = labels[:]
    rng.shuffle(perm)
    return p.relabel(dict(zip(labels, perm)))


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(0, max_size))
    density = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_poset(n, density, seed)


def rel_of(p):
    return {(a, b) for a in p.elements for b in p.elements if p.le(a, b)}


@pytest.fixture
def diamond():
    return P.from_cover_pairs("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@pytest.fixture
def vee():
    return P.from_cover_pairs("abc", [("a", "c"), ("b", "c")])


def grid(lo, hi):
    pts = [(a, b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)]
    leq = np.array([[x[0] <= y[0] and x[1] <= y[1] for y in pts] for x in pts])
    return P.FinitePoset(pts, leq)


def level_poset(levels, n):
    """Stack of n-antichains ordered strictly by level, labelled (level, slot)."""
    pts = [(i, b) for i in levels for b in range(n)]
    leq = np.array([[x == y or x[0] < y[0] for y in pts] for x in pts])
    return P.FinitePoset(pts, leq)


# -- acceptance report -------------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            num, title = m.args
            _criteria.setdefault(num, {"title": title, "ok": True, "ran": False})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for num, title in getattr(report, "criterion", ()):
        entry = _criteria[num]
        entry["ran"] = True
        entry["ok"] = entry["ok"] and report.passed


import pytest  # noqa: E402


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criterion = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        status = "PASS" if entry["ok"] and entry["ran"] else ("NOT RUN" if not entry["ran"] else "FAIL")
        terminalreporter.write_line(f"criterion {num}: {status}  {entry['title']}")
