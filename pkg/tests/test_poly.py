from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from goodred import poly
from goodred.finitefield import fq_new


def det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n, sign, out = len(M), 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv], sign = M[piv], M[c], -sign
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return sign * out


def sylvester(a, b):
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(a)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(b)) + [0] * (m - 1 - i))
    return det(rows)


nonzero = st.integers(-20, 20).filter(bool)
polys = st.builds(lambda body, lead: body + [lead], st.lists(st.integers(-20, 20), min_size=1, max_size=6), nonzero)


@given(polys, polys)
def test_resultant_is_sylvester_determinant(a, b):
    assert poly.resultant([Fraction(c) for c in a], [Fraction(c) for c in b]) == sylvester(a, b)


@given(polys, polys)
def test_divmod_identity(a, b):
    a, b = [Fraction(c) for c in a], [Fraction(c) for c in b]
    q, r = poly.divmod_(a, b)
    assert poly.add(poly.mul(q, b), r) == poly.trim(a)
    assert poly.degree(r) < poly.degree(b)


@given(polys, polys)
def test_xgcd_over_finite_field(a, b):
    F = fq_new(13)
    A, B = [F(c) for c in a], [F(c) for c in b]
    if not poly.trim(A) or not poly.trim(B):
        return
    g, s, t = poly.xgcd(A, B)
    assert poly.trim(poly.add(poly.mul(s, A), poly.mul(t, B))) == poly.trim(g)
    assert not poly.mod(A, g) and not poly.mod(B, g)


def test_discriminant_examples():
    # x^2 - 5x + 6 = (x - 2)(x - 3)
    assert poly.discriminant([Fraction(6), Fraction(-5), Fraction(1)]) == 1
    # repeated root
    assert poly.discriminant([Fraction(1), Fraction(-2), Fraction(1)]) == 0
    # formal degree one higher: leading coefficient squared
    a = [Fraction(6), Fraction(-5), Fraction(2)]
    assert poly.discriminant(a, 3) == 4 * poly.discriminant(a)
    assert poly.discriminant(a, 4) == 0


def test_compose_and_evaluate():
    a = [Fraction(c) for c in (1, 2, 3)]
    b = [Fraction(c) for c in (-1, 1)]
    for x in range(-3, 4):
        assert poly.evaluate(poly.compose(a, b), Fraction(x)) == poly.evaluate(a, Fraction(x - 1))
