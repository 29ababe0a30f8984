"""Mumford divisors and Cantor's algorithm on odd-degree genus-2 models."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import poly
from .curve import GenusTwoCurve, reduce_mod
from .finitefield import FqField, fq_sqrt
from .qfield import PrimeIdeal, reduce_elem


class NoRationalWeierstrassPoint(ValueError):
    pass


class Skip(ValueError):
    """The prime cannot be used for a torsion check."""


def _key(a) -> tuple:
    return tuple(c.n for c in poly.trim(a))


@dataclass(frozen=True, eq=False)
class OddModel:
    """y^2 + h(x) y = f(x) with deg f = 5 and deg h <= 2 over a finite field."""

    h: list
    f: list
    base: FqField

    def __post_init__(self):
        if poly.degree(self.f) != 5 or poly.degree(self.h) > 2:
            raise ValueError("odd model needs deg f = 5 and deg h <= 2")

    def as_curve(self) -> GenusTwoCurve:
        return GenusTwoCurve(self.f, self.h, self.base)

    @property
    def identity(self) -> "MumfordDivisor":
        return MumfordDivisor((self.base.one,), (), self)

    def divisor(self, u, v) -> "MumfordDivisor":
        """Validated reduced divisor from monic u (deg <= 2) and v (deg < deg u)."""
        u, v = poly.trim(u), poly.mod(poly.trim(v), poly.trim(u)) if poly.degree(u) > 0 else []
        if not u or u[-1] != 1 or len(u) > 3:
            raise ValueError("u must be monic of degree <= 2")
        lhs = poly.sub(poly.add(poly.mul(v, v), poly.mul(v, self.h)), self.f)
        if poly.mod(lhs, u):
            raise ValueError("u does not divide v^2 + v h - f")
        return MumfordDivisor(tuple(u), tuple(v), self)

    def point(self, x, y) -> "MumfordDivisor":
        """The class of (x, y) - infinity."""
        F = self.base
        return self.divisor([-F(x), F.one], [F(y)])

    def random_point(self, rng: random.Random):
        """A uniformly chosen affine F_q-point (odd characteristic)."""
        F = self.base
        while True:
            x = F.elem(rng.randrange(F.q))
            hx, fx = poly.evaluate(self.h, x), poly.evaluate(self.f, x)
            r = fq_sqrt(hx * hx + fx * 4)
            if r is not None:
                y = (-hx + (r if rng.random() < 0.5 else -r)) / 2
                return x, y

    def random_divisor(self, rng: random.Random) -> "MumfordDivisor":
        a = self.point(*self.random_point(rng))
        b = self.point(*self.random_point(rng))
        return cantor_add(a, b)


@dataclass(frozen=True, eq=False)
class MumfordDivisor:
    u: tuple
    v: tuple
    curve: OddModel

    def __eq__(self, other):
        return (
            isinstance(other, MumfordDivisor)
            and self.curve is other.curve
            and _key(self.u) == _key(other.u)
            and _key(self.v) == _key(other.v)
        )

    def __hash__(self):
        return hash((_key(self.u), _key(self.v)))

    def is_identity(self) -> bool:
        return len(poly.trim(self.u)) == 1

    def __add__(self, other):
        return cantor_add(self, other)

    def __neg__(self):
        return negate(self)

    def __rmul__(self, n: int):
        return scalar_mul(n, self)

    def __repr__(self):
        return f"MumfordDivisor(u={list(self.u)}, v={list(self.v)})"


def negate(a: MumfordDivisor) -> MumfordDivisor:
    u = list(a.u)
    if len(u) == 1:
        return a
    v = poly.mod(poly.neg(poly.add(list(a.v), a.curve.h)), u)
    return MumfordDivisor(a.u, tuple(v), a.curve)


def cantor_add(a: MumfordDivisor, b: MumfordDivisor) -> MumfordDivisor:
    if a.curve is not b.curve:
        raise ValueError("divisors live on different curves")
    C = a.curve
    h, f = C.h, C.f
    u1, v1, u2, v2 = list(a.u), list(a.v), list(b.u), list(b.v)
    d1, e1, e2 = poly.xgcd(u1, u2)
    d, c1, c2 = poly.xgcd(d1, poly.add(poly.add(v1, v2), h))
    s1, s2, s3 = poly.mul(c1, e1), poly.mul(c1, e2), c2
    u = poly.divmod_(poly.mul(u1, u2), poly.mul(d, d))[0]
    num = poly.add(
        poly.add(poly.mul(poly.mul(s1, u1), v2), poly.mul(poly.mul(s2, u2), v1)),
        poly.mul(s3, poly.add(poly.mul(v1, v2), f)),
    )
    v = poly.mod(poly.divmod_(num, d)[0], u)
    while poly.degree(u) > 2:
        u = poly.divmod_(poly.sub(poly.sub(f, poly.mul(v, h)), poly.mul(v, v)), u)[0]
        v = poly.mod(poly.neg(poly.add(h, v)), u)
    u = poly.monic(u)
    v = poly.mod(v, u) if len(u) > 1 else []
    return MumfordDivisor(tuple(u), tuple(v), C)


def scalar_mul(n: int, a: MumfordDivisor) -> MumfordDivisor:
    if n < 0:
        return scalar_mul(-n, negate(a))
    acc, base = a.curve.identity, a
    while n:
        if n & 1:
            acc = cantor_add(acc, base)
        base = cantor_add(base, base)
        n >>= 1
    return acc


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def has_order(a: MumfordDivisor, n: int) -> bool:
    """True iff a has order exactly n."""
    if not scalar_mul(n, a).is_identity():
        return False
    return all(not scalar_mul(n // ell, a).is_identity() for ell in _prime_factors(n))


@dataclass(frozen=True)
class OddModelMap:
    """x = x0 + 1/X, Y = X^3 (y - c): even model to odd model."""

    x0: object
    c: object
    model: OddModel

    def map_divisor(self, u, v) -> MumfordDivisor:
        """Image of the class [div(u, v) - (deg u / 2)(inf+ + inf-)] for deg u = 2.

        Both points at infinity of the source land on the fibre X = 0, which
        is linearly equivalent to twice the odd model's point at infinity.
        """
        F = self.model.base
        u, v = poly.trim(u), poly.trim(v)
        du = len(u) - 1
        if du == 0:
            return self.model.identity
        if not poly.evaluate(u, self.x0):
            raise Skip("support of the divisor meets the chosen Weierstrass fibre")
        # X^d u(x0 + 1/X) is u shifted then reversed
        shifted = poly.compose(u, [self.x0, F.one])
        U = poly.monic(list(reversed(shifted + [F.zero] * (du + 1 - len(shifted)))))
        X_inv = poly.xgcd([F.zero, F.one], U)[1]  # 1/X mod U
        x_img = poly.add([self.x0], X_inv)
        V = poly.mod(poly.compose(v, x_img), U) if v else []
        V = poly.sub(V, [self.c])
        V = poly.mod(poly.mul([F.zero] * 3 + [F.one], V), U)
        return self.model.divisor(U, V)


def to_odd_model(C: GenusTwoCurve, x0=None) -> OddModelMap:
    """Move a rational Weierstrass point x0 of C to infinity."""
    F = C.base
    if not isinstance(F, FqField):
        raise TypeError("odd models are built over finite fields only")
    if x0 is None:
        roots = F.roots(C.sextic)
        if not roots:
            raise NoRationalWeierstrassPoint("4P + Q^2 has no root in the base field")
        x0 = roots[0]
    x0 = F(x0)
    if poly.evaluate(C.sextic, x0):
        raise NoRationalWeierstrassPoint("x0 is not a Weierstrass point")
    one = F.one
    inv_x = [F.zero, one]  # X, standing for 1/(x - x0)

    def transform(coeffs, n):
        # X^n * g(x0 + 1/X): shift to x0 then reverse n + 1 coefficients
        g = poly.compose(list(coeffs), [x0, one])
        g = g + [F.zero] * (n + 1 - len(g))
        return poly.trim(list(reversed(g)))

    Qt, Pt = transform(C.Q, 3), transform(C.P, 6)
    Q0, P0 = poly.evaluate(C.Q, x0), poly.evaluate(C.P, x0)
    c = fq_sqrt(P0) if F.p == 2 else -Q0 / 2
    X3 = poly.power(inv_x, 3)
    h = poly.add(Qt, poly.scale(X3, c * 2))
    f = poly.sub(poly.sub(Pt, poly.scale(poly.mul(X3, X3), c * c)), poly.scale(poly.mul(X3, Qt), c))
    return OddModelMap(x0, c, OddModel(poly.trim(h), poly.trim(f), F))


def verify_torsion_order(C: GenusTwoCurve, extminpoly, ypoly, n: int, P: PrimeIdeal) -> bool:
    """Whether [Pt + conj(Pt) - (inf+ + inf-)] has order exactly n mod P.

    Pt = (alpha, ypoly(alpha)) with alpha a root of the monic quadratic
    ``extminpoly``; both are coefficient lists over the base field of C.
    The pair is the Mumford divisor (extminpoly, ypoly), so alpha itself never
    has to live in the residue field.
    """
    u, v = poly.trim(extminpoly), poly.trim(ypoly)
    if len(u) != 3 or u[-1] != 1 or len(v) > 2:
        raise ValueError("expected a monic quadratic and a linear y-coordinate")
    on_curve = poly.sub(poly.add(poly.mul(v, v), poly.mul(v, C.Q)), C.P)
    if poly.mod(on_curve, u):
        raise ValueError("the point does not lie on the curve")
    Cp = reduce_mod(C, P)
    try:
        ur = [reduce_elem(P, c) for c in u]
        vr = [reduce_elem(P, c) for c in v]
    except ArithmeticError as exc:
        raise Skip(str(exc)) from exc
    F = Cp.base
    roots = F.roots(Cp.sextic)
    if not roots:
        raise Skip(f"no rational Weierstrass point mod {P.label()}")
    for x0 in roots:
        if poly.evaluate(ur, x0):
            D = to_odd_model(Cp, x0).map_divisor(ur, vr)
            return has_order(D, n)
    raise Skip(f"divisor meets every rational Weierstrass fibre mod {P.label()}")


@dataclass
class TorsionRow:
    norm: int
    prime: str
    group_order: int | None
    divisible: bool | None
    exact_order: bool | None
    note: str = ""


def torsion_survey(C: GenusTwoCurve, n: int, norm_bound: int, extminpoly=None, ypoly=None) -> list[TorsionRow]:
    """Check n | #J(C mod P) at every prime of norm <= bound, and the divisor's order where usable.

    Primes dividing the discriminant, or where the model reduces badly, get a
    row with ``group_order`` None.
    """
    from .counting import jacobian_order
    from .curve import BadReduction, discriminant
    from .qfield import factor_ideal, primes_up_to_norm

    bad = set()
    if C.characteristic != 2:
        bad = {P for P, _ in factor_ideal(discriminant(C))}
    rows = []
    for P in primes_up_to_norm(C.base, norm_bound):
        if P in bad:
            rows.append(TorsionRow(P.norm, P.label(), None, None, None, "prime divides the discriminant"))
            continue
        try:
            order = jacobian_order(reduce_mod(C, P))
        except (BadReduction, ArithmeticError) as exc:
            rows.append(TorsionRow(P.norm, P.label(), None, None, None, str(exc)))
            continue
        exact, note = None, ""
        if extminpoly is not None:
            try:
                exact = verify_torsion_order(C, extminpoly, ypoly, n, P)
            except Skip as exc:
                note = str(exc)
        rows.append(TorsionRow(P.norm, P.label(), order, order % n == 0, exact, note))
    return rows
