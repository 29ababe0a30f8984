"""Exact arithmetic in real quadratic fields.

Elements are stored as ``(a + b*w)/den`` where ``w`` is the standard
generator of the ring of integers: ``(1 + sqrt(D))/2`` when ``D = 1 mod 4``
and ``sqrt(D/4)`` when ``D = 0 mod 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt
import enum


class NotFundamental(ValueError):
    pass


class NotPrimePower(ValueError):
    pass


class DenominatorClash(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _squarefree(n: int) -> bool:
    i = 2
    while i * i <= n:
        if n % (i * i) == 0:
            return False
        i += 1
    return True


def is_fundamental(D: int) -> bool:
    if D <= 1:
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def rational_sqrt(x) -> Fraction | None:
    """Square root of a non-negative rational, or None when it is not a square."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class QuadField:
    """The real quadratic field of fundamental discriminant ``disc``."""

    def __init__(self, disc: int):
        if not is_fundamental(disc):
            raise NotFundamental(f"{disc} is not a fundamental discriminant > 1")
        self.disc = disc
        if disc % 4 == 1:
            self.gen_kind = "half"
            self.c1, self.c0 = 1, (disc - 1) // 4
        else:
            self.gen_kind = "root"
            self.c1, self.c0 = 0, disc // 4

    @property
    def minpoly(self) -> tuple[int, int]:
        """(c0, c1) with w^2 = c1*w + c0."""
        return self.c0, self.c1

    def __repr__(self):
        return f"QuadField({self.disc})"

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.disc == self.disc

    def __hash__(self):
        return hash(("QuadField", self.disc))

    def __call__(self, a=0, b=0, den=1) -> "QElem":
        if isinstance(a, QElem):
            if a.field != self:
                raise ValueError("element belongs to another field")
            return a
        if isinstance(a, Fraction) or isinstance(b, Fraction):
            a, b = Fraction(a), Fraction(b)
            d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
            return QElem(int(a * d), int(b * d), d * den, self)
        return QElem(a, b, den, self)

    @property
    def w(self) -> "QElem":
        return QElem(0, 1, 1, self)

    @property
    def one(self) -> "QElem":
        return QElem(1, 0, 1, self)

    @property
    def zero(self) -> "QElem":
        return QElem(0, 0, 1, self)

    @property
    def sqrt_disc(self) -> "QElem":
        if self.gen_kind == "half":
            return QElem(-1, 2, 1, self)
        return QElem(0, 2, 1, self)

    def w_float(self, sign: int = 1) -> float:
        r = self.disc ** 0.5
        if self.gen_kind == "half":
            return (1 + sign * r) / 2
        return sign * r / 2

    @cached_property
    def fundamental_unit(self) -> "QElem":
        return fundamental_unit(self)

    def norm_form(self, a: int, b: int) -> int:
        """N(a + b*w) for integers a, b."""
        return a * a + self.c1 * a * b - self.c0 * b * b

    def splitting_type(self, p: int) -> Splitting:
        return splitting_type(self, p)

    def primes_above(self, p: int) -> list["PrimeIdeal"]:
        return primes_above(self, p)


@lru_cache(maxsize=None)
def qf_new(D: int) -> QuadField:
    return QuadField(D)


class QElem:
    """(a + b*w)/den in a real quadratic field, kept in lowest terms."""

    __slots__ = ("a", "b", "den", "field")

    def __init__(self, a: int, b: int, den: int, field: QuadField):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            a, b, den = -a, -b, -den
        g = gcd(gcd(a, b), den)
        if g > 1:
            a, b, den = a // g, b // g, den // g
        self.a, self.b, self.den, self.field = a, b, den, field

    # construction helpers
    def _coerce(self, other) -> "QElem":
        if isinstance(other, QElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return QElem(other, 0, 1, self.field)
        if isinstance(other, Fraction):
            return QElem(other.numerator, 0, other.denominator, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den
        return QElem(self.a * o.den + o.a * self.den, self.b * o.den + o.b * self.den, d, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QElem(-self.a, -self.b, self.den, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        bb = b1 * b2
        # w^2 = c1*w + c0
        return QElem(a1 * a2 + K.c0 * bb, a1 * b2 + a2 * b1 + K.c1 * bb, self.den * o.den, K)

    __rmul__ = __mul__

    def conj(self) -> "QElem":
        # conj(w) = c1 - w
        K = self.field
        return QElem(self.a + self.b * K.c1, -self.b, self.den, K)

    def norm(self) -> Fraction:
        return Fraction(self.field.norm_form(self.a, self.b), self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a + self.b * self.field.c1, self.den)

    def inverse(self) -> "QElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        # c / n, n rational
        return QElem(c.a * n.denominator, c.b * n.denominator, c.den * n.numerator, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QElem(1, 0, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QElem) else other
        if o is NotImplemented:
            return False
        return (self.a, self.b, self.den) == (o.a, o.b, o.den) and self.field == o.field

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.den, self.field.disc))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.den == 1

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.a, self.den)

    def embed(self, sign: int = 1) -> float:
        """Real embedding; sign=+1 sends w to its larger real value."""
        return (self.a + self.b * self.field.w_float(sign)) / self.den

    def __float__(self):
        return self.embed(1)

    def triple(self) -> list[int]:
        return [self.a, self.b, self.den]

    def __repr__(self):
        return f"QElem({self.a}, {self.b}, {self.den}, D={self.field.disc})"

    def __str__(self):
        return format_qelem(self)


def format_qelem(x: QElem, name: str = "w") -> str:
    """Text form ``a+b*w/den`` (den omitted when 1)."""
    if x.b == 0:
        core = str(x.a)
    else:
        bs = {1: name, -1: "-" + name}.get(x.b, f"{x.b}*{name}")
        if x.a == 0:
            core = bs
        else:
            sign = "-" if x.b < 0 else "+"
            babs = abs(x.b)
            core = f"{x.a}{sign}{name if babs == 1 else f'{babs}*{name}'}"
    if x.den != 1:
        return f"({core})/{x.den}"
    return core


def fundamental_unit(K: QuadField) -> QElem:
    """Smallest unit > 1 via the continued fraction of -conj(w).

    Every unit x + y*w > 1 gives a convergent x/y of theta = (P + sqrt(D))/2
    with P = -1 (D odd) or 0, so the first convergent of unit norm is it.
    """
    D = K.disc
    P, Q = (-1 if K.gen_kind == "half" else 0), 2
    r = isqrt(D)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(100000):
        # complete quotients keep Q > 0, so floor((P + sqrt(D))/Q) = (P + isqrt(D)) // Q
        a = (P + r) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if abs(K.norm_form(p, q)) == 1:
            return QElem(p, q, 1, K)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise RuntimeError("continued fraction did not reach a unit")


def kronecker(D: int, p: int) -> int:
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    return 1 if pow(D, (p - 1) // 2, p) == 1 else -1


def splitting_type(K: QuadField, p: int) -> Splitting:
    k = kronecker(K.disc, p)
    if k == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if k == 1 else Splitting.INERT


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of O_F identified by (p, image of w in the residue field)."""

    field: QuadField
    p: int
    deg: int
    ramified: bool
    root: object  # int for deg 1, FqElem for deg 2
    generator: QElem | None = dc_field(default=None, compare=False, hash=False)

    @property
    def norm(self) -> int:
        return self.p ** self.deg

    @cached_property
    def residue_field(self):
        from .finitefield import fq_new

        return fq_new(self.p, self.deg)

    def with_generator(self, g: QElem) -> "PrimeIdeal":
        return PrimeIdeal(self.field, self.p, self.deg, self.ramified, self.root, g)

    def label(self) -> str:
        if self.generator is not None:
            return format_qelem(self.generator)
        if self.deg == 2:
            return f"({self.p})"
        return f"({self.p}, w-{self.root})"

    def __repr__(self):
        return f"PrimeIdeal(D={self.field.disc}, p={self.p}, deg={self.deg}, root={self.root})"


def _roots_mod_p(K: QuadField, p: int) -> list[int]:
    return [x for x in range(p) if (x * x - K.c1 * x - K.c0) % p == 0]


def primes_above(K: QuadField, p: int) -> list[PrimeIdeal]:
    kind = splitting_type(K, p)
    if kind is Splitting.INERT:
        from .finitefield import fq_new

        F = fq_new(p, 2)
        root = min(F.roots([F(-K.c0), F(-K.c1), F(1)]), key=lambda e: e.n)
        return [PrimeIdeal(K, p, 2, False, root)]
    roots = _roots_mod_p(K, p)
    if kind is Splitting.RAMIFIED:
        return [PrimeIdeal(K, p, 1, True, roots[0])]
    return [PrimeIdeal(K, p, 1, False, r) for r in roots]


def prime_from_generator(g: QElem) -> PrimeIdeal:
    if not g.is_integral():
        raise NotPrimePower(f"{g} is not integral")
    K = g.field
    n = abs(K.norm_form(g.a, g.b))
    if is_prime(n):
        p = n
        if g.b % p == 0:
            raise NotPrimePower(f"{g} has norm {p} but is divisible by {p}")
        root = (-g.a * pow(g.b, -1, p)) % p
        return PrimeIdeal(K, p, 1, splitting_type(K, p) is Splitting.RAMIFIED, root, g)
    if g.b == 0 and is_prime(abs(g.a)) and splitting_type(K, abs(g.a)) is Splitting.INERT:
        return primes_above(K, abs(g.a))[0].with_generator(g)
    raise NotPrimePower(f"norm of {g} is {n}, not a prime or an inert prime squared")


def local_root(P: PrimeIdeal, k: int) -> int:
    """The image of w in Z/p^k under the completion at a split prime P."""
    K, p, r = P.field, P.p, P.root
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        f = (r * r - K.c1 * r - K.c0) % mod
        r = (r - f * pow(2 * r - K.c1, -1, mod)) % mod
    return r


def reduce_elem(P: PrimeIdeal, x: QElem):
    """Image of x in the residue field of P (w maps to P.root)."""
    F = P.residue_field
    if x.den % P.p == 0:
        raise DenominatorClash(f"{P.p} divides the denominator of {x}")
    if P.deg == 1:
        return F((x.a + x.b * P.root) * pow(x.den, -1, P.p))
    return (F(x.a) + F(x.b) * P.root) / F(x.den)


def reduce_local(P: PrimeIdeal, x: QElem):
    """Like reduce_elem, but also reduces P-integral x whose denominator p divides.

    (a + b w)/den in lowest terms can only be P-integral with p | den when P
    splits; then w is replaced by its p-adic image.
    """
    if x.den % P.p:
        return reduce_elem(P, x)
    if P.deg == 2 or P.ramified:
        raise DenominatorClash(f"{x} is not integral at {P.label()}")
    p, v, d = P.p, 0, x.den
    while d % p == 0:
        d, v = d // p, v + 1
    m = p ** (v + 1)
    num = (x.a + x.b * local_root(P, v + 1)) % m
    if num % p ** v:
        raise DenominatorClash(f"{x} is not integral at {P.label()}")
    return P.residue_field((num // p ** v) * pow(d, -1, p))


def is_square_in_F(x: QElem) -> QElem | None:
    """A square root of x inside its field, or None."""
    K = x.field
    if not x:
        return K.zero
    n = x.norm()
    q = rational_sqrt(n)
    if q is None:
        return None
    tr = x.trace()
    for qq in (q, -q):
        t = rational_sqrt(tr + 2 * qq)
        if t:
            return (x + qq) / t
    if x.is_rational():
        # x = c^2 * D gives sqrt(D) * c
        c = rational_sqrt(x.to_fraction() / K.disc)
        if c is not None:
            return K.sqrt_disc * c
    return None


def primes_up_to_norm(K: QuadField, bound: int) -> list[PrimeIdeal]:
    """Primes of O_F with norm <= bound, ordered by (norm, p, root)."""
    out = [P for p in range(2, bound + 1) if is_prime(p) for P in primes_above(K, p) if P.norm <= bound]
    return sorted(out, key=lambda P: (P.norm, P.p, getattr(P.root, "n", P.root)))


def _vp(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n, v = n // p, v + 1
    return v


def valuation(P: PrimeIdeal, x: QElem) -> int:
    """v_P(x) for nonzero x."""
    if not x:
        raise ValueError("valuation of zero")
    p = P.p
    scale = _vp(x.den, p)
    a, b = x.a, x.b  # x = (a + b w)/den
    if P.ramified:
        return _vp(abs(P.field.norm_form(a, b)), p) - 2 * scale
    if P.deg == 2:
        return min(_vp(a, p) if a else 10 ** 9, _vp(b, p) if b else 10 ** 9) - scale
    total = _vp(abs(P.field.norm_form(a, b)), p)
    k = 0
    while k < total and (a + b * local_root(P, k + 1)) % p ** (k + 1) == 0:
        k += 1
    return k - scale


def factor_ideal(x: QElem) -> list[tuple[PrimeIdeal, int]]:
    """The prime ideals dividing the numerator or denominator of (x), with exponents."""
    n = x.norm()
    m, ps, p = abs(n.numerator) * n.denominator * x.den, [], 2
    while p * p <= m:
        if m % p == 0:
            ps.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        ps.append(m)
    out = []
    for p in ps:
        for P in primes_above(x.field, p):
            e = valuation(P, x)
            if e:
                out.append((P, e))
    return out


def unit_exponent(u: QElem) -> tuple[int, int]:
    """(sign, k) with u = sign * eps^k, eps the fundamental unit."""
    import math

    if abs(u.norm()) != 1 or not u.is_integral():
        raise ValueError(f"{u} is not a unit")
    eps = u.field.fundamental_unit
    k = round(math.log(abs(u.embed(1))) / math.log(abs(eps.embed(1))))
    for sign in (1, -1):
        if eps ** k * sign == u:
            return sign, k
    raise ArithmeticError(f"{u} is not +-eps^k")  # pragma: no cover
