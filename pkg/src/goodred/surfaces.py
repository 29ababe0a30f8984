"""Double-cover models z^2 = f(r, s) of Hilbert modular surfaces.

A model carries the cover polynomial and, optionally, rational functions
giving the Igusa-Clebsch invariants of the abelian surface over (r, s).  The
module also enumerates candidate points and rebuilds curves over finite fields
from invariants (Mestre's conic-and-cubic method, plus a brute-force oracle).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

import numpy as np

from . import poly
from .curve import GenusTwoCurve, IgusaClebsch, Singular, WrongGenus, ic_weighted_equal, igusa_clebsch
from .expr import evaluate_expression
from .finitefield import FqArray, FqElem, FqField, fq_sqrt
from .qfield import QElem, is_square_in_F, qf_new, rational_sqrt
from .sextic import BadCharacteristic, igusa_clebsch_to_clebsch, sextic_igusa_clebsch

__all__ = [
    "BadCharacteristic", "BiPoly", "CandidatePoint", "DEFAULT_SIEVE", "DenominatorVanishes", "MapMissing",
    "NonGenericStratum", "NotFound", "SurfaceModel", "UnknownModel", "auto_sieve_moduli",
    "enumerate_points",
    "eval_cover", "exhaustive_reconstruct", "field_box", "ic_at", "is_candidate_point",
    "load_model", "mestre_reconstruct", "rationals", "registry_get",
]

DEFAULT_SIEVE = (7, 11, 13, 16, 9)


class UnknownModel(KeyError):
    pass


class MapMissing(LookupError):
    pass


class DenominatorVanishes(ZeroDivisionError):
    pass


class NonGenericStratum(ArithmeticError):
    """Mestre's construction degenerates at these invariants."""


class NotFound(LookupError):
    pass


# --- sparse bivariate polynomials ---

class BiPoly:
    """A polynomial in r and s with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def gens(cls) -> tuple["BiPoly", "BiPoly"]:
        return cls({(1, 0): 1}), cls({(0, 1): 1})

    @staticmethod
    def _as(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in self._as(other).terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._as(other))

    def __rsub__(self, other):
        return self._as(other) - self

    def __mul__(self, other):
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, m), b in self._as(other).terms.items():
                out[i + k, j + m] = out.get((i + k, j + m), 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._as(other)
        if set(o.terms) - {(0, 0)} or not o.terms:
            raise ZeroDivisionError("only division by a nonzero constant is supported")
        c = o.terms[0, 0]
        return BiPoly({k: v / c for k, v in self.terms.items()})

    def __pow__(self, e: int):
        acc = BiPoly.const(1)
        for _ in range(e):
            acc = acc * self
        return acc

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiPoly({self.monomials()})"

    @property
    def degrees(self) -> tuple[int, int]:
        return (max((i for i, _ in self.terms), default=0), max((j for _, j in self.terms), default=0))

    def monomials(self) -> list[list[int]]:
        return [[i, j, c.numerator, c.denominator] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_monomials(cls, mons) -> "BiPoly":
        out: dict = {}
        for m in mons:
            if not (isinstance(m, (list, tuple)) and len(m) == 4 and all(isinstance(x, int) for x in m)):
                raise ValueError(f"monomial must be [deg_r, deg_s, num, den], got {m!r}")
            i, j, n, d = m
            if i < 0 or j < 0 or d == 0:
                raise ValueError(f"bad monomial {m!r}")
            out[i, j] = out.get((i, j), 0) + Fraction(n, d)
        return cls(out)

    def __call__(self, r, s):
        lift = _lifter(r, s)
        dr, ds = self.degrees
        # keep array-valued factors on the left so FqArray operators win
        rp, sp = [r ** 0], [s ** 0]
        for _ in range(dr):
            rp.append(rp[-1] * r)
        for _ in range(ds):
            sp.append(sp[-1] * s)
        acc = rp[0] * sp[0] * lift(0)
        for (i, j), c in self.terms.items():
            acc = acc + rp[i] * sp[j] * lift(c)
        return acc


def _lifter(*xs):
    for x in xs:
        if isinstance(x, QElem):
            K = x.field
            return lambda c: K(Fraction(c).numerator, 0, Fraction(c).denominator)
        if isinstance(x, (FqElem, FqArray)):
            F = x.field
            return lambda c: F(Fraction(c).numerator) / F(Fraction(c).denominator)
    return Fraction


# --- models ---

@dataclass
class SurfaceModel:
    coeffD: int
    cover: BiPoly
    icmap: tuple | None = None  # four (numerator, denominator) pairs
    provenance: str = ""

    def to_dict(self) -> dict:
        doc: dict = {"coeffD": self.coeffD, "cover": self.cover.monomials()}
        if self.icmap is not None:
            doc["icmap"] = {name: {"num": n.monomials(), "den": d.monomials()}
                            for name, (n, d) in zip(("I2", "I4", "I6", "I10"), self.icmap)}
        if self.provenance:
            doc["provenance"] = self.provenance
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "SurfaceModel":
        try:
            Dp = int(doc["coeffD"])
            cover = BiPoly.from_monomials(doc["cover"])
            icmap = None
            if doc.get("icmap") is not None:
                icmap = tuple(
                    (BiPoly.from_monomials(doc["icmap"][k]["num"]),
                     BiPoly.from_monomials(doc["icmap"][k].get("den", [[0, 0, 1, 1]])))
                    for k in ("I2", "I4", "I6", "I10")
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad surface model document: {exc}") from exc
        if not cover:
            raise ValueError("cover polynomial is zero")
        if icmap is not None and any(not d for _, d in icmap):
            raise ValueError("icmap denominator is zero")
        return cls(Dp, cover, icmap, str(doc.get("provenance", "")))


def _bipoly(text: str, **extra) -> BiPoly:
    r, s = BiPoly.gens()
    return evaluate_expression(text, {"r": r, "s": s, **extra}, BiPoly.const)


def _model_8() -> SurfaceModel:
    cover = _bipoly("2(16rs^2 + 32r^2s - 40rs - s + 16r^3 + 24r^2 + 12r + 2)")
    A1 = _bipoly("2rs^2")
    A = _bipoly("-(9rs + 4r^2 + 4r + 1)/3")
    B1 = _bipoly("rs^2(3s + 8r - 2)/3")
    B = _bipoly("-(54r^2s + 81rs - 16r^3 - 24r^2 - 12r - 2)/27")
    B2 = _bipoly("r^2")
    one = BiPoly.const(1)
    icmap = ((-24 * B1, A1), (-12 * A, one), (96 * A * B1 - 36 * A1 * B, A1), (-4 * A1 * B2, one))
    return SurfaceModel(8, cover, icmap, "Y_-(8) double cover with its Igusa-Clebsch map")


def _model_17() -> SurfaceModel:
    # printed in variables (g, h); here r = g, s = h
    cover = _bipoly("-256s^3 + (192r^2 + 464r + 185)s^2 - 2(2r + 1)(12r^3 - 65r^2 - 54r - 9)s"
                    " + (r + 1)^4 (2r + 1)^2")
    return SurfaceModel(17, cover, None, "Y_-(17) double cover, no invariant map")


@lru_cache(maxsize=None)
def _registry() -> dict:
    return {8: _model_8(), 17: _model_17()}


def registry_get(Dp: int, extra: list[SurfaceModel] | None = None) -> SurfaceModel:
    """The model for D', preferring user-supplied models over built-in ones."""
    for m in extra or ():
        if m.coeffD == Dp:
            return m
    try:
        return _registry()[Dp]
    except KeyError:
        raise UnknownModel(f"no surface model for D' = {Dp}; supply one with a model file") from None


def load_model(source) -> SurfaceModel:
    """A model from a JSON file path, JSON text or an already-parsed dict."""
    if isinstance(source, dict):
        return SurfaceModel.from_dict(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        with open(text) as fh:
            text = fh.read()
    try:
        return SurfaceModel.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ValueError(f"surface model is not JSON: {exc}") from exc


def eval_cover(m: SurfaceModel, r, s):
    return m.cover(r, s)


# --- candidate points ---

@dataclass(frozen=True)
class CandidatePoint:
    """(r, s) whose cover value is a nonzero square in F.

    ``square_class`` is "1" when the value is a square already in Q (or, for
    non-rational points, in F) and "D" when it is D times a rational square;
    ``root`` is then the rational c with value = D c^2, otherwise sqrt(value).
    """

    r: object
    s: object
    cover_value: object
    square_class: str
    root: object

    def to_json(self) -> dict:
        return {"r": _jsonable(self.r), "s": _jsonable(self.s),
                "cover_value": _jsonable(self.cover_value), "square_class": self.square_class}


def _jsonable(x):
    if isinstance(x, QElem):
        return x.triple()
    return str(Fraction(x))


def _as_rational(x) -> Fraction | None:
    if isinstance(x, QElem):
        return x.to_fraction() if x.is_rational() else None
    return Fraction(x)


def is_candidate_point(m: SurfaceModel, baseD: int, r, s) -> CandidatePoint | None:
    K = qf_new(baseD)
    for x in (r, s):
        if isinstance(x, QElem) and x.field != K:
            raise ValueError(f"{x} does not lie in Q(sqrt {baseD})")
    value = eval_cover(m, r, s)
    if not value:
        return None
    v = _as_rational(value)
    if v is not None:
        root = rational_sqrt(v)
        if root is not None:
            return CandidatePoint(r, s, value, "1", root)
        root = rational_sqrt(v / baseD)
        if root is not None:
            return CandidatePoint(r, s, value, "D", root)
        return None
    root = is_square_in_F(value)
    return CandidatePoint(r, s, value, "1", root) if root is not None else None


def rationals(height: int) -> list[Fraction]:
    """All a/b in lowest terms with max(|a|, b) <= height, ordered by (height, value)."""
    if height < 1:
        raise ValueError("height bound must be >= 1")
    out = []
    for b in range(1, height + 1):
        for a in range(-height, height + 1):
            if gcd(a, b) == 1 or (a == 0 and b == 1):
                out.append(Fraction(a, b))
    return sorted(set(out), key=lambda x: (max(abs(x.numerator), x.denominator), x))


def field_box(baseD: int, bound: int, den: int) -> list[QElem]:
    """(a + b w)/den for |a|, |b| <= bound, in (a, b) order."""
    K = qf_new(baseD)
    return [K(a, b, den) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]


def _homogenised(m: SurfaceModel):
    """Integer coefficients of G(a, b, c, d) = L^2 f(a/b, c/d) b^kr d^ks.

    kr and ks are even, so G and f have the same square class.
    """
    dr, ds = m.cover.degrees
    kr, ks = dr + dr % 2, ds + ds % 2
    L = lcm(*(c.denominator for c in m.cover.terms.values()))
    coeffs = {k: int(c * L * L) for k, c in m.cover.terms.items()}
    return coeffs, kr, ks


@lru_cache(maxsize=64)
def _sieve_table(coeffs_key: tuple, kr: int, ks: int, baseD: int, M: int) -> np.ndarray:
    """Boolean table over (a, b, c, d) mod M: can G be a square or baseD times one?"""
    coeffs = dict(coeffs_key)
    x = np.arange(M, dtype=np.int64)
    pw = np.ones((max(kr, ks) + 1, M), dtype=np.int64)
    for e in range(1, len(pw)):
        pw[e] = pw[e - 1] * x % M
    G = np.zeros((M, M, M, M), dtype=np.int64)
    for (i, j), c in coeffs.items():
        term = (c % M) * pw[i][:, None, None, None] * pw[kr - i][None, :, None, None] % M
        term = term * pw[j][None, None, :, None] % M * pw[ks - j][None, None, None, :] % M
        G = (G + term) % M
    sq = x * x % M
    ok = np.zeros(M, dtype=bool)
    ok[sq] = True
    ok[baseD * sq % M] = True
    return ok[G]


def auto_sieve_moduli(baseD: int, count: int = 6, limit: int = 43) -> tuple[int, ...]:
    """DEFAULT_SIEVE plus small primes modulo which baseD is a nonzero square.

    At such a prime "square or baseD times a square" is just "square", so
    each one rejects about half of the pairs.
    """
    extra = [p for p in range(17, limit + 1)
             if all(p % d for d in range(2, p)) and baseD % p and pow(baseD, (p - 1) // 2, p) == 1]
    return DEFAULT_SIEVE + tuple(extra[:count])


def _sieve_tables(m: SurfaceModel, baseD: int, moduli) -> list[tuple[int, np.ndarray]]:
    coeffs, kr, ks = _homogenised(m)
    key = tuple(sorted(coeffs.items()))
    out = []
    for M in moduli:
        T = _sieve_table(key, kr, ks, baseD, M)
        if not T.all():
            out.append((M, T))
    return out


def _square_class_int(G: int, baseD: int) -> bool:
    if G <= 0:
        return False
    r = isqrt(G)
    if r * r == G:
        return True
    if G % baseD:
        return False
    r = isqrt(G // baseD)
    return r * r == G // baseD


def enumerate_points(m: SurfaceModel, baseD: int, height: int | None = None,
                     sieve_moduli="auto", box: tuple[int, int] | None = None):
    """Yield candidate points in a deterministic order.

    Rational mode walks all pairs from ``rationals(height)``, discarding pairs
    whose homogenised cover value is not a square or baseD times a square
    modulo some sieve modulus, then tests the survivors exactly.  With
    ``sieve_moduli="auto"`` the moduli come from ``auto_sieve_moduli``; pass
    ``()`` to disable sieving.  Field mode (``box`` = (bound, den)) walks
    ``field_box`` pairs and tests each one exactly.
    """
    if box is not None:
        vals = field_box(baseD, *box)
        for r in vals:
            for s in vals:
                c = is_candidate_point(m, baseD, r, s)
                if c is not None:
                    yield c
        return
    if height is None:
        raise ValueError("give a height bound or a field box")
    if isinstance(sieve_moduli, str):
        sieve_moduli = auto_sieve_moduli(baseD)
    vals = rationals(height)
    nums = np.array([v.numerator for v in vals], dtype=np.int64)
    dens = np.array([v.denominator for v in vals], dtype=np.int64)
    tables = _sieve_tables(m, baseD, sieve_moduli)
    coeffs, kr, ks = _homogenised(m)
    terms = list(coeffs.items())
    rpow = [[v.numerator ** i * v.denominator ** (kr - i) for i in range(kr + 1)] for v in vals]
    spow = [[v.numerator ** j * v.denominator ** (ks - j) for j in range(ks + 1)] for v in vals]
    for ri, (r, a, b) in enumerate(zip(vals, nums, dens)):
        keep = np.ones(len(vals), dtype=bool)
        for M, T in tables:
            keep &= T[a % M, b % M][nums % M, dens % M]
        rp = rpow[ri]
        for k in np.flatnonzero(keep):
            sp = spow[k]
            if _square_class_int(sum(c * rp[i] * sp[j] for (i, j), c in terms), baseD):
                c = is_candidate_point(m, baseD, r, vals[k])
                if c is None:  # pragma: no cover
                    raise AssertionError("integer and exact square tests disagree")
                yield c


# --- invariants on the surface ---

def ic_at(m: SurfaceModel, r, s) -> IgusaClebsch:
    if m.icmap is None:
        raise MapMissing(f"model D' = {m.coeffD} has no Igusa-Clebsch map")
    out = []
    for num, den in m.icmap:
        d = den(r, s)
        if not d:
            raise DenominatorVanishes(f"an invariant denominator vanishes at ({r}, {s})")
        out.append(num(r, s) / d)
    return IgusaClebsch(*out)


# --- Mestre reconstruction over F_q ---

# Conic and cubic coefficients as polynomials in the Clebsch invariants.
# Monomial exponents are (a, b, c, d) for A^a B^b C^c D^d.  The cubic is
# summed over all ordered index triples, i.e. with multinomial weights.
_CONIC = {
    (0, 0): (((0, 0, 1, 0), "2"), ((1, 1, 0, 0), "1/3")),
    (0, 1): (((0, 2, 0, 0), "2/3"), ((1, 0, 1, 0), "2/3")),
    (1, 1): (((0, 0, 0, 1), "1"),),
    (0, 2): (((0, 0, 0, 1), "1"),),
    (1, 2): (((0, 0, 2, 0), "2/3"), ((0, 3, 0, 0), "1/3"), ((1, 1, 1, 0), "4/9")),
    (2, 2): (((0, 1, 0, 1), "1/2"), ((0, 2, 1, 0), "2/9"), ((1, 0, 2, 0), "2/9")),
}
_CUBIC = {
    (0, 0, 0): (((0, 0, 0, 1), "2"), ((0, 1, 1, 0), "-4/3"), ((2, 0, 1, 0), "2/9")),
    (0, 0, 1): (((0, 0, 2, 0), "4/3"), ((0, 3, 0, 0), "2/9"), ((1, 0, 0, 1), "1/3"),
                ((1, 1, 1, 0), "4/9")),
    (0, 0, 2): (((0, 1, 0, 1), "1/3"), ((0, 2, 1, 0), "4/9"), ((1, 0, 2, 0), "2/3"),
                ((1, 3, 0, 0), "1/9"), ((2, 1, 1, 0), "4/27")),
    (0, 1, 1): (((0, 1, 0, 1), "1/3"), ((0, 2, 1, 0), "4/9"), ((1, 0, 2, 0), "2/3"),
                ((1, 3, 0, 0), "1/9"), ((2, 1, 1, 0), "4/27")),
    (0, 1, 2): (((0, 0, 1, 1), "2/3"), ((0, 1, 2, 0), "2/9"), ((0, 4, 0, 0), "1/9"),
                ((1, 1, 0, 1), "1/6"), ((1, 2, 1, 0), "2/9"), ((2, 0, 2, 0), "2/27")),
    (0, 2, 2): (((0, 0, 3, 0), "4/9"), ((0, 2, 0, 1), "1/6"), ((0, 3, 1, 0), "8/27"),
                ((1, 0, 1, 1), "1/9"), ((1, 1, 2, 0), "13/27"), ((1, 4, 0, 0), "1/18"),
                ((2, 2, 1, 0), "2/27")),
    (1, 1, 1): (((0, 0, 1, 1), "-1/3"), ((0, 1, 2, 0), "2/9"), ((0, 4, 0, 0), "1/3"),
                ((1, 2, 1, 0), "2/3"), ((2, 0, 2, 0), "8/27")),
    (1, 1, 2): (((0, 0, 3, 0), "-2/9"), ((0, 2, 0, 1), "1/2"), ((0, 3, 1, 0), "-1/27"),
                ((1, 0, 1, 1), "4/9"), ((1, 1, 2, 0), "-2/27")),
    (1, 2, 2): (((0, 0, 0, 2), "1/2"), ((0, 1, 1, 1), "-1/18"), ((0, 2, 2, 0), "1/27"),
                ((0, 5, 0, 0), "1/18"), ((1, 3, 1, 0), "1/9"), ((2, 1, 2, 0), "4/81")),
    (2, 2, 2): (((0, 0, 2, 1), "5/9"), ((0, 1, 3, 0), "-1/27"), ((0, 3, 0, 1), "1/4"),
                ((0, 4, 1, 0), "-1/18"), ((1, 1, 1, 1), "1/3"), ((1, 2, 2, 0), "-1/9"),
                ((2, 0, 3, 0), "-4/81")),
}


def _eval_clebsch_poly(terms, ABCD, F):
    acc = F.zero
    for exps, c in terms:
        c = Fraction(c)
        t = F(c.numerator) / F(c.denominator)
        for base, e in zip(ABCD, exps):
            if e:
                t = t * base ** e
        acc = acc + t
    return acc


def _ic_field(ic, field):
    vals = tuple(ic)
    F = field
    for v in vals:
        if isinstance(v, FqElem):
            F = v.field
    if not isinstance(F, FqField):
        raise TypeError("give invariants over a finite field (or pass the field)")
    return F, tuple(F(v) if not isinstance(v, FqElem) else v for v in vals)


def conic_matrix(ABCD, F) -> list[list]:
    L = [[None] * 3 for _ in range(3)]
    for (i, j), terms in _CONIC.items():
        L[i][j] = L[j][i] = _eval_clebsch_poly(terms, ABCD, F)
    return L


def cubic_coefficients(ABCD, F) -> dict:
    return {k: _eval_clebsch_poly(terms, ABCD, F) for k, terms in _CUBIC.items()}


def _det3(L):
    return (L[0][0] * (L[1][1] * L[2][2] - L[1][2] * L[2][1])
            - L[0][1] * (L[1][0] * L[2][2] - L[1][2] * L[2][0])
            + L[0][2] * (L[1][0] * L[2][1] - L[1][1] * L[2][0]))


def conic_point(L, F: FqField) -> list:
    """A projective point of the conic x^T L x = 0, found by a linear scan."""
    one, zero = F.one, F.zero
    for x in F.elements():
        # z = 1: L22 y^2 + 2(L12 x + L23) y + (L11 x^2 + 2 L13 x + L33) = 0
        a = L[1][1]
        b = (L[0][1] * x + L[1][2]) * 2
        c = L[0][0] * x * x + L[0][2] * x * 2 + L[2][2]
        if a:
            r = fq_sqrt(b * b - a * c * 4)
            if r is not None:
                return [x, (r - b) / (a * 2), one]
        elif b:
            return [x, -c / b, one]
        elif not c:
            return [x, zero, one]
    for x in F.elements():
        if not (L[0][0] * x * x + L[0][1] * x * 2 + L[1][1]):
            return [x, one, zero]
    if not L[0][0]:
        return [one, zero, zero]
    raise NonGenericStratum("conic has no rational point, so it is degenerate")


def mestre_reconstruct(ic, field: FqField | None = None) -> GenusTwoCurve:
    """A curve y^2 = f(x) over F_q whose Igusa-Clebsch invariants are ``ic``."""
    F, vals = _ic_field(ic, field)
    if F.p in (2, 3, 5):
        raise BadCharacteristic(f"reconstruction needs characteristic > 5, got {F.p}")
    if not vals[3]:
        raise NonGenericStratum("I10 = 0: the invariants are degenerate")
    ABCD = igusa_clebsch_to_clebsch(*vals)
    L = conic_matrix(ABCD, F)
    if not _det3(L):
        raise NonGenericStratum("Mestre conic is singular")
    cubic = cubic_coefficients(ABCD, F)
    P0 = conic_point(L, F)
    # every other conic point is L(Q) P0 - 2 B(P0, Q) Q on the line Q(t) = U + tW
    idx = next(i for i in range(3) if P0[i])
    U, W = [[F.one if k == i else F.zero for k in range(3)] for i in range(3) if i != idx]
    Qt = [[U[i], W[i]] for i in range(3)]
    LQ, BP = [F.zero], [F.zero]
    for i in range(3):
        for j in range(3):
            LQ = poly.add(LQ, poly.scale(poly.mul(Qt[i], Qt[j]), L[i][j]))
            BP = poly.add(BP, poly.scale(Qt[j], L[i][j] * P0[i]))
    X = [poly.sub(poly.scale(LQ, P0[i]), poly.scale(poly.mul(BP, Qt[i]), F(2))) for i in range(3)]
    sextic = [F.zero]
    for (i, j, k), c in cubic.items():
        weight = {1: 1, 2: 3, 3: 6}[len({i, j, k})]
        term = poly.mul(poly.mul(X[i], X[j]), X[k])
        sextic = poly.add(sextic, poly.scale(term, c * weight))
    try:
        C = GenusTwoCurve(sextic, [], F)
    except (Singular, WrongGenus) as exc:
        raise NonGenericStratum(f"Mestre sextic is singular: {exc}") from exc
    if not ic_weighted_equal(igusa_clebsch(C), vals):
        raise NonGenericStratum("Mestre sextic has different invariants")
    return C


# --- brute-force oracle ---

@lru_cache(maxsize=4)
def _normalised_family(F: FqField):
    """All monic x^6 + a4 x^4 + ... + a0 and x^5 + a3 x^3 + ... + a0 with their IC.

    Up to twist, every genus-2 curve over F_q (p > 5) has such a model.
    """
    q = F.q
    grid6 = np.stack(np.meshgrid(*[np.arange(q)] * 5, indexing="ij"), -1).reshape(-1, 5)
    grid5 = np.stack(np.meshgrid(*[np.arange(q)] * 4, indexing="ij"), -1).reshape(-1, 4)
    n6, n5 = len(grid6), len(grid5)
    coeffs = np.zeros((n6 + n5, 7), dtype=np.int64)
    coeffs[:n6, :5] = grid6
    coeffs[:n6, 6] = 1
    coeffs[n6:, :4] = grid5
    coeffs[n6:, 5] = 1
    f = [FqArray(F, coeffs[:, i]) for i in range(7)]
    ic = sextic_igusa_clebsch(f)
    return coeffs, [x.a for x in ic]


def exhaustive_reconstruct(ic, field: FqField | None = None) -> GenusTwoCurve:
    """First curve of the normalised family with weighted-equal invariants."""
    F, vals = _ic_field(ic, field)
    if F.q > 9:
        raise ValueError("exhaustive reconstruction is limited to q <= 9")
    if F.p in (2, 3, 5):
        raise BadCharacteristic(f"invariants need characteristic > 5, got {F.p}")
    if not vals[3]:
        raise NotFound("I10 = 0 is not attained by a smooth curve")
    coeffs, fam = _normalised_family(F)
    ws = IgusaClebsch.WEIGHTS
    target = [v.n for v in vals]
    ok = np.ones(len(coeffs), dtype=bool)
    for i in range(4):
        ok &= (fam[i] != 0) == (target[i] != 0)
    X = [FqArray(F, a) for a in fam]
    for i in range(4):
        for j in range(i + 1, 4):
            lhs = X[i] ** ws[j] * (vals[j] ** ws[i])
            rhs = X[j] ** ws[i] * (vals[i] ** ws[j])
            ok &= lhs.a == rhs.a
    hits = np.flatnonzero(ok)
    if not len(hits):
        raise NotFound("no curve over the field has these invariants")
    row = coeffs[hits[0]]
    return GenusTwoCurve([F.elem(int(c)) for c in row], [], F)
