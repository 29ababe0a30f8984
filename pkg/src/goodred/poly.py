"""Dense univariate polynomials over an exact field, as coefficient lists.

Coefficients run low to high.  Any element type with field operations works
(``Fraction``, ``QElem``, ``FqElem``); plain ints are accepted where the
element type coerces them.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a) -> int:
    a = trim(a)
    return len(a) - 1  # -1 for zero polynomial


def add(a, b) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def neg(a) -> list:
    return [-c for c in a]


def scale(a, c) -> list:
    return trim([x * c for x in a])


def mul(a, b) -> list:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            r[i + j] = r[i + j] + x * y
    return trim(r)


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if hasattr(c, "inverse"):
        return c.inverse()
    return 1 / c


def divmod_(a, b) -> tuple[list, list]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = _inv(b[-1])
    r = list(a)
    qt = [0] * (len(a) - db)
    for s in range(len(a) - 1 - db, -1, -1):
        c = r[s + db] * inv
        qt[s] = c
        if c:
            for i, bc in enumerate(b):
                r[s + i] = r[s + i] - c * bc
    return trim(qt), trim(r[:db])


def mod(a, b) -> list:
    return divmod_(a, b)[1]


def monic(a) -> list:
    a = trim(a)
    if not a:
        return a
    inv = _inv(a[-1])
    return [c * inv for c in a]


def gcd(a, b) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def xgcd(a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    inv = _inv(r0[-1])
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a) -> list:
    return trim([a[i] * i for i in range(1, len(a))])


def compose(a, b) -> list:
    """a(b(x))."""
    acc: list = []
    for c in reversed(trim(a)):
        acc = add(mul(acc, b), [c])
    return acc


def power(a, n: int) -> list:
    r = [1]
    for _ in range(n):
        r = mul(r, a)
    return r


def resultant(a, b):
    """Resultant of a and b with respect to their actual degrees."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return 0
    m, n = len(a) - 1, len(b) - 1
    if n == 0:
        return b[0] ** m
    r = mod(a, b)
    if not r:
        return 0
    k = len(r) - 1
    sign = -1 if (m * n) % 2 else 1
    return sign * b[-1] ** (m - k) * resultant(b, r)


def discriminant(a, formal_degree: int | None = None):
    """Discriminant of a as a binary form of the given formal degree.

    With a vanishing leading coefficient the form has a root at infinity;
    for formal degree n and actual degree n-1 the value is lc^2 * disc.
    """
    a = trim(a)
    d = len(a) - 1
    n = d if formal_degree is None else formal_degree
    if d < n - 1 or d < 1:
        return 0 * (a[0] if a else 0)
    if d == n - 1:
        return a[-1] * a[-1] * discriminant(a)
    da = derivative(a)
    if not da:
        return 0 * a[0]
    dd = len(da) - 1
    # formal degree of a' is n-1
    res = resultant(a, da) * a[-1] ** ((n - 1) - dd)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res * _inv(a[-1])


def binomial(n: int, k: int) -> int:
    return comb(n, k)
