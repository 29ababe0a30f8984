import random

import pytest

from goodred import poly
from goodred.counting import frobenius_charpoly, jacobian_order
from goodred.curve import GenusTwoCurve, embedded_curve, reduce_mod
from goodred.expr import evaluate_poly
from goodred.finitefield import fq_new
from goodred.jacobian import (
    NoRationalWeierstrassPoint, OddModel, Skip, cantor_add, has_order, negate, scalar_mul, to_odd_model,
    verify_torsion_order,
)
from goodred.qfield import primes_above, primes_up_to_norm, qf_new

from .conftest import random_curve

K53 = qf_new(53)
SYM = {"w": [K53.w], "x": [K53.zero, K53.one]}
U53 = evaluate_poly("x^2 - wx + 3", SYM, K53.one)
V53 = evaluate_poly("(-6w - 12)x + 2w + 18", SYM, K53.one)


def odd_model(F, rng, with_h=False):
    C = random_curve(F, rng, degree=5)
    h = [F.elem(rng.randrange(F.q)) for _ in range(3)] if with_h else []
    # y^2 + h y = f has sextic 4f + h^2, still of degree 5 when deg h <= 2
    f = poly.sub(poly.trim(C.P), poly.scale(poly.mul(h, h), F.one / 4)) if h else poly.trim(C.P)
    return OddModel(poly.trim(h), f, F)


def test_group_axioms(small_field):
    F = small_field
    rng = random.Random(F.q)
    J = odd_model(F, rng, with_h=True)
    O = J.identity
    for _ in range(100):
        a, b, c = (J.random_divisor(rng) for _ in range(3))
        assert cantor_add(a, O) == a
        assert cantor_add(a, negate(a)).is_identity()
        assert cantor_add(a, b) == cantor_add(b, a)
        assert cantor_add(cantor_add(a, b), c) == cantor_add(a, cantor_add(b, c))


def test_scalar_multiplication(small_field):
    F = small_field
    rng = random.Random(3 * F.q)
    J = odd_model(F, rng)
    N = jacobian_order(J.as_curve())
    for _ in range(50):
        a = J.random_divisor(rng)
        assert scalar_mul(0, a).is_identity()
        assert scalar_mul(2, a) == cantor_add(a, a)
        assert scalar_mul(N, a).is_identity()
        assert scalar_mul(-3, a) == negate(scalar_mul(3, a))


def test_point_orders_divide_group_order():
    F = fq_new(11)
    rng = random.Random(11)
    J = odd_model(F, rng)
    N = jacobian_order(J.as_curve())
    seen = set()
    for _ in range(50):
        a = J.random_divisor(rng)
        order = next(d for d in range(1, N + 1) if N % d == 0 and scalar_mul(d, a).is_identity())
        assert N % order == 0 and has_order(a, order)
        seen.add(order)
    assert max(seen) > 1


def test_identity_has_order_one():
    J = odd_model(fq_new(7), random.Random(1))
    assert has_order(J.identity, 1)


def test_odd_model_preserves_frobenius():
    C53 = embedded_curve("53/8")
    used = 0
    for P in primes_up_to_norm(K53, 60):
        if P.p < 3:
            continue
        Cp = reduce_mod(C53, P)
        try:
            m = to_odd_model(Cp)
        except NoRationalWeierstrassPoint:
            continue
        assert poly.degree(m.model.f) == 5
        assert frobenius_charpoly(m.model.as_curve()) == frobenius_charpoly(Cp)
        used += 1
    assert used >= 3


def test_no_rational_weierstrass_point():
    F = fq_new(7)
    rng = random.Random(2)
    while True:
        C = random_curve(F, rng)
        if not F.roots(C.sextic):
            break
    with pytest.raises(NoRationalWeierstrassPoint):
        to_odd_model(C)


def test_c53_divisor_has_order_seven_somewhere():
    C = embedded_curve("53/8")
    hits = 0
    for P in primes_up_to_norm(K53, 200):
        if P.p < 3:
            continue
        try:
            ok = verify_torsion_order(C, U53, V53, 7, P)
        except Skip:
            continue
        assert ok
        if not hits:
            # a wrong order is rejected at the same prime
            assert not verify_torsion_order(C, U53, V53, 14, P)
            assert not verify_torsion_order(C, U53, V53, 1, P)
        hits += 1
    assert hits >= 5


def test_torsion_skip_when_no_weierstrass_point():
    C = embedded_curve("53/8")
    skipped = 0
    for P in primes_up_to_norm(K53, 60):
        if P.p < 3:
            continue
        if not P.residue_field.roots(reduce_mod(C, P).sextic):
            with pytest.raises(Skip):
                verify_torsion_order(C, U53, V53, 7, P)
            skipped += 1
    assert skipped


def test_torsion_point_must_lie_on_curve():
    C = embedded_curve("53/8")
    P = primes_above(K53, 7)[0]
    with pytest.raises(ValueError):
        verify_torsion_order(C, U53, poly.add(V53, [K53.one]), 7, P)


def test_odd_model_rejects_even_degree():
    F = fq_new(7)
    with pytest.raises(ValueError):
        OddModel([], [F(1)] * 7, F)
    C = GenusTwoCurve([F(1), F(0), F(0), F(0), F(0), F(1)], [], F)
    assert to_odd_model(C, x0=F(-1)).model.base is F
