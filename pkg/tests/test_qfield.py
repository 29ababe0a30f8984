from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodred.finitefield import fq_new
from goodred.hecke import SUMMARY_CASES
from goodred.qfield import (
    DenominatorClash, NotFundamental, NotPrimePower, Splitting, factor_ideal, format_qelem,
    fundamental_unit, is_prime, is_square_in_F, local_root, prime_from_generator, primes_above,
    primes_up_to_norm, qf_new, reduce_elem, reduce_local, splitting_type, unit_exponent, valuation,
)

K53, K193, K8 = qf_new(53), qf_new(193), qf_new(8)


def cf_unit(K):
    """First convergent h/k of w with N(h - k w) = +-1, via the (P + sqrt D)/Q recurrence.

    Returns the conjugate unit h - k w', which is the one above 1.
    """
    D = K.disc
    P, Q = (1, 2) if K.gen_kind == "half" else (0, 1)
    if K.gen_kind == "root":
        D //= 4
    h0, h1, k0, k1 = 0, 1, 1, 0
    while True:
        a = (P + isqrt(D)) // Q
        h0, h1, k0, k1 = h1, a * h1 + h0, k1, a * k1 + k0
        if abs(K.norm_form(h1, -k1)) == 1:
            return K(h1, -k1).conj()
        P = a * Q - P
        Q = (D - P * P) // Q


def test_minpolys():
    assert K53.minpoly == (13, 1)
    assert K8.minpoly == (2, 0)
    assert qf_new(12).minpoly == (3, 0)
    assert K53.w * K53.w == K53.w + 13


@pytest.mark.parametrize("D", [1, 3, 7, 18, 45, 50, 63, 0, -4])
def test_non_fundamental(D):
    with pytest.raises(NotFundamental):
        qf_new(D)


@pytest.mark.parametrize("D,expected", [(53, (3, 1, 1)), (8, (1, 1, 1)), (29, (2, 1, 1))])
def test_fundamental_unit_examples(D, expected):
    assert fundamental_unit(qf_new(D)).triple() == list(expected)


def test_unit_norms():
    assert fundamental_unit(K53).norm() == -1
    assert fundamental_unit(K8).norm() == -1


@pytest.mark.parametrize("D", sorted({d for d, _, _ in SUMMARY_CASES} | {d for _, d, _ in SUMMARY_CASES}))
def test_fundamental_unit_matches_continued_fraction(D):
    K = qf_new(D)
    eps = fundamental_unit(K)
    assert eps == cf_unit(K)
    assert eps.embed(1) > 1 and abs(eps.norm()) == 1


def test_splitting_examples():
    assert splitting_type(K53, 7) is Splitting.SPLIT
    assert splitting_type(K53, 2) is Splitting.INERT
    assert splitting_type(K53, 53) is Splitting.RAMIFIED
    assert splitting_type(K193, 2) is Splitting.SPLIT  # 193 = 1 mod 8


def test_primes_above():
    assert sorted(P.root for P in primes_above(K53, 7)) == [3, 5]
    (P2,) = primes_above(K53, 2)
    assert (P2.deg, P2.norm) == (2, 4)
    (P53,) = primes_above(K53, 53)
    assert P53.ramified


@pytest.mark.parametrize("D", [5, 8, 12, 53, 193, 929])
def test_roots_satisfy_minpoly(D):
    K = qf_new(D)
    c0, c1 = K.minpoly
    for p in range(2, 200):
        if not is_prime(p):
            continue
        for P in primes_above(K, p):
            r = P.root
            if P.deg == 1:
                assert (r * r - c1 * r - c0) % p == 0
            else:
                assert r * r - r * c1 - c0 == 0


def test_prime_from_generator():
    P = prime_from_generator(K193(-67, 9))
    assert (P.p, P.deg, P.root) == (2, 1, 1)
    P = prime_from_generator(K53(-2, -1))
    assert (P.p, P.root) == (7, 5)
    P = prime_from_generator(qf_new(929)(3))
    assert (P.deg, P.norm) == (2, 9)
    with pytest.raises(NotPrimePower):
        prime_from_generator(K53(6))


def test_reduce_elem_examples():
    P = prime_from_generator(K53(-2, -1))
    assert reduce_elem(P, K53(-2, -1)) == 0
    assert reduce_elem(P, K53(3, -1)) == 5
    assert reduce_elem(P, K53(10)) == 3
    with pytest.raises(DenominatorClash):
        reduce_elem(P, K53(1, 0, 7))


def test_reduce_local_at_split_prime():
    P = prime_from_generator(K53(-2, -1))
    Q = [R for R in primes_above(K53, 7) if R != P][0]
    # (-w - 2)/7 = 1/(3 - w): a unit at P (w = 5), a pole at the conjugate prime
    x = K53(-2, -1, 7)
    assert x == 1 / K53(3, -1)
    assert reduce_local(P, x) == 3
    with pytest.raises(DenominatorClash):
        reduce_local(Q, x)
    with pytest.raises(DenominatorClash):
        reduce_elem(P, x)
    with pytest.raises(DenominatorClash):
        reduce_local(P, K53(1, 0, 7))
    (P2,) = primes_above(K53, 2)
    with pytest.raises(DenominatorClash):
        reduce_local(P2, K53(1, 1, 2))


def test_local_root_is_hensel_lift():
    for P in primes_above(K53, 7):
        r = local_root(P, 5)
        assert (r * r - r - 13) % 7 ** 5 == 0 and r % 7 == P.root


def test_is_square_examples():
    y = is_square_in_F(K193(193, 0, 16))
    assert y is not None and y * y == K193(193, 0, 16)
    assert y in (K193(-1, 2, 4), -K193(-1, 2, 4))
    eps = fundamental_unit(K53)
    assert is_square_in_F(eps * eps) in (eps, -eps)
    assert is_square_in_F(K53(2)) is None
    assert is_square_in_F(eps) is None


ints = st.integers(-10 ** 6, 10 ** 6)
elems = st.builds(lambda a, b, d: K53(a, b, d), ints, ints, st.integers(1, 1000))


@given(elems, elems)
def test_norm_trace_conj(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert x + x.conj() == K53(x.trace().numerator, 0, x.trace().denominator)


@settings(max_examples=1000)
@given(elems)
def test_square_roots_of_squares(x):
    r = is_square_in_F(x * x)
    assert r is not None and r * r == x * x


@given(elems.filter(bool))
def test_inverse(x):
    assert x * x.inverse() == 1


def test_valuation_and_factorisation():
    g = K53(-2, -1)
    P = prime_from_generator(g)
    Q = [R for R in primes_above(K53, 7) if R != P][0]
    x = g ** 3 * g.conj() / 4
    assert valuation(P, x) == 3 and valuation(Q, x) == 1
    facs = {(R.p, R.root if R.deg == 1 else None): e for R, e in factor_ideal(x)}
    assert facs == {(7, P.root): 3, (7, Q.root): 1, (2, None): -2}
    assert factor_ideal(fundamental_unit(K53) ** 5) == []


def test_unit_exponent():
    eps = fundamental_unit(K53)
    assert unit_exponent(-(eps ** -7)) == (-1, -7)
    assert unit_exponent(K53(1)) == (1, 0)


def test_primes_up_to_norm_ordering():
    Ps = primes_up_to_norm(K53, 30)
    assert [P.norm for P in Ps] == [4, 7, 7, 9, 11, 11, 13, 13, 17, 17, 25, 29, 29]
    assert fq_new(2, 2) is Ps[0].residue_field


def test_format():
    assert format_qelem(K53(-2, -1)) == "-2-w"
    assert format_qelem(K53(-24, -10, 121)) == "(-24-10*w)/121"
