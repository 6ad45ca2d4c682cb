"""Exact rational matrices stored as tuples of tuples of Fractions."""
from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .errors import NotSymmetric, SizeLimitExceeded

PSD_MAX_SIZE = 5


def matrix(rows) -> tuple:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int) -> tuple:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def diag(values) -> tuple:
    values = list(values)
    n = len(values)
    return tuple(tuple(Fraction(values[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def unit(n: int, i: int, j: int, value=1) -> tuple:
    return tuple(tuple(Fraction(value) if (r, c) == (i, j) else Fraction(0) for c in range(n)) for r in range(n))


def add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a) -> tuple:
    return tuple(tuple(-x for x in row) for row in a)


def scale(a, t) -> tuple:
    return tuple(tuple(t * x for x in row) for row in a)


def mul(a, b) -> tuple:
    if len(a) == 2 and len(b) == 2 and len(b[0]) == 2:
        (p, q), (r, s) = a
        (t, u), (v, w) = b
        return ((p * t + q * v, p * u + q * w), (r * t + s * v, r * u + s * w))
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def transpose(a) -> tuple:
    return tuple(zip(*a))


def trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_symmetric(a) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def det(a) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        p = m[c][c]
        out *= p
        for r in range(c + 1, n):
            f = m[r][c] / p
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * out


def inverse(a) -> tuple:
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[pivot] = m[pivot], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def principal_minors(a):
    n = len(a)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            yield idx, det([[a[i][j] for j in idx] for i in idx])


def psd_check(a) -> bool:
    """Positive semi-definiteness of a symmetric rational matrix via all principal minors."""
    n = len(a)
    if n > PSD_MAX_SIZE:
        raise SizeLimitExceeded(f"psd_check supports n <= {PSD_MAX_SIZE}, got {n}")
    if not is_symmetric(a):
        raise NotSymmetric("psd_check needs a symmetric matrix")
    if n == 2:
        return a[0][0] >= 0 and a[1][1] >= 0 and a[0][0] * a[1][1] - a[0][1] * a[1][0] >= 0
    return all(m >= 0 for _, m in principal_minors(a))


def encode(a) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in a) + "]"


_ROW = re.compile(r"\[([^\[\]]*)\]")


def decode(s: str) -> tuple:
    rows = _ROW.findall(s.strip()[1:-1])
    return tuple(tuple(Fraction(v) for v in r.split(",")) for r in rows)
