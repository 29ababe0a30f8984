"""Invariants of binary sextics via transvectants.

A binary form of degree n is a coefficient list ``c`` with
``F(x, y) = sum(c[i] * x**i * y**(n - i))``, so a univariate polynomial
(low to high) is its own dehomogenisation at y = 1.  Everything here divides
by small factorials and therefore needs characteristic 0 or > 5.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


class BadCharacteristic(ValueError):
    pass


def _partial(form, n, dx, dy):
    out = [0] * (n - dx - dy + 1)
    for i, c in enumerate(form):
        j = n - i
        if i < dx or j < dy or not c:
            continue
        k = 1
        for t in range(dx):
            k *= i - t
        for t in range(dy):
            k *= j - t
        out[i - dx] = out[i - dx] + c * k
    return out


def _mul(f, g):
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            r[i + j] = r[i + j] + a * b
    return r


def _scale_rational(c, fr: Fraction):
    return c * fr.numerator / fr.denominator if not isinstance(c, int) else Fraction(c) * fr


def transvectant(f, n: int, g, m: int, k: int):
    """The k-th transvectant (f, g)_k of forms of degrees n and m."""
    res = [0] * (n + m - 2 * k + 1)
    for j in range(k + 1):
        pr = _mul(_partial(f, n, k - j, j), _partial(g, m, j, k - j))
        s = (-1) ** j * comb(k, j)
        for i, c in enumerate(pr):
            res[i] = res[i] + s * c
    fac = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return [_scale_rational(c, fac) for c in res]


def covariants(f):
    """The quartic i, the quadrics y1, y2, y3 and the Clebsch invariants of a sextic."""
    f = list(f) + [0] * (7 - len(f))
    i = transvectant(f, 6, f, 6, 4)
    delta = transvectant(i, 4, i, 4, 2)
    y1 = transvectant(f, 6, i, 4, 4)
    y2 = transvectant(i, 4, y1, 2, 2)
    y3 = transvectant(i, 4, y2, 2, 2)
    A = transvectant(f, 6, f, 6, 6)[0]
    B = transvectant(i, 4, i, 4, 4)[0]
    C = transvectant(i, 4, delta, 4, 4)[0]
    D = transvectant(y3, 2, y1, 2, 2)[0]
    return {"i": i, "delta": delta, "y1": y1, "y2": y2, "y3": y3, "A": A, "B": B, "C": C, "D": D}


def clebsch_invariants(f):
    U = covariants(f)
    return U["A"], U["B"], U["C"], U["D"]


def clebsch_to_igusa_clebsch(A, B, C, D):
    I2 = -120 * A
    I4 = -720 * A ** 2 + 6750 * B
    I6 = 8640 * A ** 3 - 108000 * A * B + 202500 * C
    I10 = (-62208 * A ** 5 + 972000 * A ** 3 * B + 1620000 * A ** 2 * C
           - 3037500 * A * B ** 2 - 6075000 * B * C - 4556250 * D)
    return I2, I4, I6, I10


def igusa_clebsch_to_clebsch(I2, I4, I6, I10):
    """Inverse of clebsch_to_igusa_clebsch (char 0 or > 5)."""
    A = I2 / -120 if not isinstance(I2, int) else Fraction(I2, -120)
    B = (I4 + 720 * A ** 2) / 6750
    C = (I6 - 8640 * A ** 3 + 108000 * A * B) / 202500
    D = (I10 + 62208 * A ** 5 - 972000 * A ** 3 * B - 1620000 * A ** 2 * C
         + 3037500 * A * B ** 2 + 6075000 * B * C) / -4556250
    return A, B, C, D


def sextic_igusa_clebsch(f):
    """Igusa-Clebsch invariants (I2, I4, I6, I10) of the binary sextic f.

    Normalised so that I10 is the discriminant of f as a binary sextic.
    """
    return clebsch_to_igusa_clebsch(*clebsch_invariants(f))
