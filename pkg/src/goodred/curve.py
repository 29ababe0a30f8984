"""Genus-2 curves y^2 + Q(x) y = P(x) over a real quadratic field or F_q."""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import poly
from .expr import evaluate_poly
from .finitefield import FqElem, FqField
from .qfield import PrimeIdeal, QElem, QuadField, qf_new, reduce_elem
from .sextic import BadCharacteristic, sextic_igusa_clebsch

__all__ = [
    "BadCharacteristic", "BadReduction", "CharTwo", "GenusTwoCurve", "IgusaClebsch",
    "Singular", "WrongGenus", "curve_new", "discriminant", "embedded_curve",
    "embedded_curve_keys", "ic_weighted_equal", "igusa_clebsch", "reduce_mod", "twist",
]

# Delta = DISC_SCALE * disc6(4P + Q^2); one global constant for every model.
DISC_SCALE = Fraction(1, 2 ** 12)


class Singular(ValueError):
    pass


class WrongGenus(ValueError):
    pass


class BadReduction(ValueError):
    pass


class CharTwo(ValueError):
    pass


def characteristic(base) -> int:
    return base.p if isinstance(base, FqField) else 0


def _lift(base, c):
    if isinstance(c, (QElem, FqElem)):
        if c.field != base:
            raise ValueError(f"coefficient {c!r} is not in {base!r}")
        return c
    if isinstance(base, QuadField):
        return base(c) if not isinstance(c, Fraction) else base(c.numerator, 0, c.denominator)
    if isinstance(c, Fraction):
        return base(c.numerator) / base(c.denominator)
    return base(c)


def _reverse(coeffs, n):
    """x^n * f(1/x) for a coefficient list padded to length n + 1."""
    return list(reversed(list(coeffs) + [coeffs[0] * 0] * (n + 1 - len(coeffs))))


def _char2_smooth_at_origin_side(P, Q) -> bool:
    """Affine smoothness of y^2 + Qy = P in characteristic 2."""
    if not poly.trim(Q):
        return False
    dQ, dP = poly.derivative(Q), poly.derivative(P)
    g = poly.gcd(Q, poly.add(poly.mul(poly.mul(dQ, dQ), P), poly.mul(dP, dP)))
    return len(g) == 1


@dataclass(frozen=True)
class IgusaClebsch:
    """A point (I2 : I4 : I6 : I10) of weighted projective space P(1, 2, 3, 5)."""

    I2: object
    I4: object
    I6: object
    I10: object

    WEIGHTS = (1, 2, 3, 5)

    def as_tuple(self) -> tuple:
        return (self.I2, self.I4, self.I6, self.I10)

    def scaled(self, lam) -> "IgusaClebsch":
        return IgusaClebsch(*(lam ** k * v for k, v in zip(self.WEIGHTS, self.as_tuple())))

    def reduce(self, P: PrimeIdeal) -> "IgusaClebsch":
        return IgusaClebsch(*(reduce_elem(P, v) for v in self.as_tuple()))

    def __iter__(self):
        return iter(self.as_tuple())


def ic_weighted_equal(x, y) -> bool:
    """Equality in P(1,2,3,5), decided by cross-multiplication only.

    True iff the zero patterns agree and x_i^(w_j) y_j^(w_i) = x_j^(w_i) y_i^(w_j)
    for every pair, which is equality of the points over an algebraic closure.
    """
    xs, ys = tuple(x), tuple(y)
    ws = IgusaClebsch.WEIGHTS
    if [bool(a) for a in xs] != [bool(b) for b in ys]:
        return False
    for i in range(4):
        for j in range(i + 1, 4):
            if xs[i] ** ws[j] * ys[j] ** ws[i] != xs[j] ** ws[i] * ys[i] ** ws[j]:
                return False
    return True


class GenusTwoCurve:
    """A smooth model y^2 + Q(x) y = P(x), deg P <= 6, deg Q <= 3."""

    def __init__(self, P, Q, base):
        P, Q = poly.trim(P), poly.trim(Q)
        if len(P) > 7 or len(Q) > 4:
            raise WrongGenus("need deg P <= 6 and deg Q <= 3")
        self.base = base
        zero = _lift(base, 0)
        self.P = [_lift(base, c) for c in P] + [zero] * (7 - len(P))
        self.Q = [_lift(base, c) for c in Q] + [zero] * (4 - len(Q))
        self.sextic = poly.add(poly.scale(self.P, 4), poly.mul(self.Q, self.Q))
        self.sextic += [zero] * (7 - len(self.sextic))
        self._validate()

    @property
    def characteristic(self) -> int:
        return characteristic(self.base)

    def _validate(self):
        if self.characteristic == 2:
            dP, dQ = poly.degree(self.P), poly.degree(self.Q)
            if dQ < 3 and dP < 5:
                raise WrongGenus("model has genus < 2")
            rP, rQ = _reverse(self.P, 6), _reverse(self.Q, 3)
            if not _char2_smooth_at_origin_side(self.P, self.Q):
                raise Singular("singular affine point")
            at_inf = rQ[0] or (rQ[1] * rQ[1] * rP[0] + rP[1] * rP[1])
            if not at_inf:
                raise Singular("singular point at infinity")
            return
        if poly.degree(self.sextic) < 5:
            raise WrongGenus("4P + Q^2 has degree < 5")
        if not poly.discriminant(self.sextic, 6):
            raise Singular("4P + Q^2 has a repeated root")

    def __repr__(self):
        return f"GenusTwoCurve(P={self.P}, Q={self.Q}, base={self.base!r})"

    def __eq__(self, other):
        return isinstance(other, GenusTwoCurve) and (self.base, self.P, self.Q) == (other.base, other.P, other.Q)

    def __hash__(self):
        return hash((tuple(self.P), tuple(self.Q)))

    # file format
    def to_json(self) -> dict:
        if not isinstance(self.base, QuadField):
            raise TypeError("only curves over quadratic fields have a file format")
        return {"D": self.base.disc, "P": [c.triple() for c in self.P], "Q": [c.triple() for c in self.Q]}

    @classmethod
    def from_json(cls, doc) -> "GenusTwoCurve":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            K = qf_new(int(doc["D"]))
            P = [K(*map(int, t)) for t in doc["P"]]
            Q = [K(*map(int, t)) for t in doc["Q"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed curve file: {exc}") from exc
        return cls(P, Q, K)


def curve_new(P, Q, base) -> GenusTwoCurve:
    return GenusTwoCurve(P, Q, base)


def discriminant(C: GenusTwoCurve):
    """DISC_SCALE times the binary-sextic discriminant of 4P + Q^2."""
    if C.characteristic == 2:
        raise BadCharacteristic("the sextic discriminant vanishes identically in characteristic 2")
    d = poly.discriminant(C.sextic, 6)
    return d * DISC_SCALE.numerator / DISC_SCALE.denominator


def igusa_clebsch(C: GenusTwoCurve) -> IgusaClebsch:
    if C.characteristic in (2, 3, 5):
        raise BadCharacteristic(f"Igusa-Clebsch invariants need characteristic 0 or > 5, got {C.characteristic}")
    return IgusaClebsch(*sextic_igusa_clebsch(C.sextic))


def twist(C: GenusTwoCurve, d) -> GenusTwoCurve:
    """The model y^2 = d (4P + Q^2)/4; isomorphic to C when d is a square."""
    if C.characteristic == 2:
        raise CharTwo("quadratic twists by y^2 = d f(x) need 2 invertible")
    d = _lift(C.base, d)
    if not d:
        raise ValueError("twisting parameter must be nonzero")
    quarter = _lift(C.base, 1) / 4
    return GenusTwoCurve([c * d * quarter for c in C.sextic], [], C.base)


def reduce_mod(C: GenusTwoCurve, P: PrimeIdeal) -> GenusTwoCurve:
    """Coefficientwise reduction; BadReduction when the reduced model is singular."""
    F = P.residue_field
    Pr = [reduce_elem(P, c) for c in C.P]
    Qr = [reduce_elem(P, c) for c in C.Q]
    try:
        return GenusTwoCurve(Pr, Qr, F)
    except (Singular, WrongGenus) as exc:
        raise BadReduction(f"bad reduction at {P.label()}: {exc}") from exc


# embedded curves

@lru_cache(maxsize=None)
def _curve_table() -> dict:
    cp = configparser.ConfigParser()
    cp.read_string(resources.files("goodred.data").joinpath("curves.ini").read_text())
    return {name: dict(cp[name]) for name in cp.sections()}


def embedded_curve_keys() -> list[str]:
    return list(_curve_table())


def parse_curve_text(P_text: str, Q_text: str, D: int) -> GenusTwoCurve:
    K = qf_new(D)
    syms = {"x": [K.zero, K.one], "w": [K.w], "b": [K.sqrt_disc]}
    P = evaluate_poly(P_text, syms, K.one)
    Q = evaluate_poly(Q_text, syms, K.one) if Q_text else []
    return GenusTwoCurve(P, Q, K)


@lru_cache(maxsize=None)
def embedded_curve(key: str) -> GenusTwoCurve:
    """Curve shipped with the package, keyed like '193/17' or '421/5/c'."""
    table = _curve_table()
    if key not in table:
        matches = [k for k in table if k.startswith(key + "/")]
        if len(matches) != 1:
            raise KeyError(f"no embedded curve {key!r}")
        key = matches[0]
    entry = table[key]
    D = int(key.split("/")[0])
    return parse_curve_text(entry["p"], entry.get("q", ""), D)
