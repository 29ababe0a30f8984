"""Small finite fields F_{p^k} with table-driven arithmetic.

Elements are encoded as integers ``n = sum(c_i * p**i)`` where ``c_i`` are the
coordinates in the polynomial basis ``1, t, ..., t^(k-1)`` modulo a fixed
irreducible polynomial.  Exp/log tables make multiplication a lookup, and the
``v*`` methods work on numpy arrays of encodings for bulk point counting.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product

import numpy as np


class WrongCharacteristic(ValueError):
    pass


# --- polynomial helpers over F_p (int lists, low to high) ---

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = [c % p for c in a]
    _ptrim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _ptrim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return _ptrim([c % p for c in r])


def _ppowmod(a, e, m, p):
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim([c % p for c in a]), _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial f over F_p."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** k, f, p), x, p):
        return False
    for ell in _prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def least_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k, least in the order of its encoded lower coefficients."""
    if k == 1:
        return [0, 1]
    for n in range(p ** k):
        low = [(n // p ** i) % p for i in range(k)]
        f = low + [1]
        if low[0] and is_irreducible(f, p):
            return f
    raise RuntimeError("no irreducible polynomial found")


class FqField:
    """The field F_{p^k} in a fixed polynomial basis."""

    def __init__(self, p: int, k: int = 1):
        if k < 1:
            raise ValueError("degree must be >= 1")
        self.p, self.k = p, k
        self.q = p ** k
        self.modulus = least_irreducible(p, k)
        self._pw = [p ** i for i in range(k)]

    def __repr__(self):
        return f"FqField({self.p}^{self.k})"

    def __reduce__(self):
        return (fq_new, (self.p, self.k))

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            if x.field is not self:
                raise ValueError("element of another field")
            return x
        if isinstance(x, (list, tuple)):
            return FqElem(self, self.encode(x))
        return FqElem(self, int(x) % self.p)

    def elem(self, n: int) -> "FqElem":
        return FqElem(self, int(n))

    @property
    def zero(self):
        return FqElem(self, 0)

    @property
    def one(self):
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        """Class of t in F_p[t]/(modulus)."""
        return FqElem(self, self.p if self.k > 1 else 0)

    def elements(self):
        return (FqElem(self, n) for n in range(self.q))

    # encoding
    def digits(self, n: int) -> list[int]:
        return [(n // pw) % self.p for pw in self._pw]

    def encode(self, d) -> int:
        d = _pmod(list(d), self.modulus, self.p) if len(d) > self.k else [c % self.p for c in d]
        return sum(c * pw for c, pw in zip(d, self._pw))

    # tables
    @cached_property
    def _tables(self):
        q, p, m = self.q, self.p, self.modulus
        if q == 2:
            return np.array([1], dtype=np.int64), np.array([-1, 0], dtype=np.int64)
        order = q - 1
        facs = _prime_factors(order)
        for n in range(2, q) if self.k == 1 else range(p, q):
            g = self.digits(n)
            if all(_ppowmod(g, order // ell, m, p) != [1] for ell in facs):
                break
        else:  # pragma: no cover
            raise RuntimeError("no primitive element")
        exp = np.zeros(order, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = [1]
        if self.k == 1:
            gi, c = g[0], 1
            for i in range(order):
                exp[i] = c
                log[c] = i
                c = c * gi % p
        else:
            for i in range(order):
                n = sum(c * pw for c, pw in zip(cur, self._pw))
                exp[i] = n
                log[n] = i
                cur = _pmod(_pmul(cur, g, p), m, p)
        return exp, log

    @property
    def exp_table(self):
        return self._tables[0]

    @property
    def log_table(self):
        return self._tables[1]

    @cached_property
    def _digit_table(self):
        n = np.arange(self.q, dtype=np.int64)
        return np.stack([(n // pw) % self.p for pw in self._pw], axis=-1)

    # scalar arithmetic on encodings
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, r = self.p, 0
        for pw in self._pw:
            r += (((a // pw) + (b // pw)) % p) * pw
        return r

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, r = self.p, 0
        for pw in self._pw:
            r += ((-(a // pw)) % p) * pw
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        exp, log = self._tables
        return int(exp[(log[a] + log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return int(exp[(-log[a]) % (self.q - 1)])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e % (self.q - 1), self.p)
        exp, log = self._tables
        return int(exp[(log[a] * e) % (self.q - 1)])

    # vectorised arithmetic on arrays of encodings
    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        dt = self._digit_table
        return (((dt[a] + dt[b]) % self.p) * np.array(self._pw)).sum(axis=-1)

    def vneg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        dt = self._digit_table
        return (((-dt[a]) % self.p) * np.array(self._pw)).sum(axis=-1)

    def vmul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.k == 1:
            return (a * b) % self.p
        exp, log = self._tables
        res = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def vinv(self, a):
        """Elementwise inverse; zero entries stay zero."""
        a = np.asarray(a)
        exp, log = self._tables
        return np.where(a == 0, 0, exp[(-log[a]) % (self.q - 1)])

    def vpoly(self, coeffs, xs):
        """Evaluate a polynomial (list of encodings, low to high) at an array of points."""
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = self.vadd(self.vmul(acc, xs), np.full_like(xs, c))
        return acc

    @cached_property
    def quadratic_character(self):
        """chi[n] in {0, 1, -1} for every encoded element (odd characteristic)."""
        if self.p == 2:
            raise WrongCharacteristic("quadratic character needs odd characteristic")
        log = self.log_table
        chi = np.where(log % 2 == 0, 1, -1)
        chi[0] = 0
        return chi

    @cached_property
    def trace_table(self):
        """Absolute trace to F_p of every encoded element, as an int array."""
        xs = np.arange(self.q, dtype=np.int64)
        acc, tr = xs, xs
        for _ in range(self.k - 1):
            acc = self.vpow_p(acc)
            tr = self.vadd(tr, acc)
        return tr

    def vpow_p(self, a):
        if self.k == 1:
            return a
        exp, log = self._tables
        return np.where(a == 0, 0, exp[(log[a] * self.p) % (self.q - 1)])

    def roots(self, coeffs) -> list["FqElem"]:
        """All roots in this field of a polynomial with coefficients in this field."""
        cs = [self(c).n for c in coeffs]
        xs = np.arange(self.q, dtype=np.int64)
        vals = self.vpoly(cs, xs)
        return [FqElem(self, int(n)) for n in np.nonzero(vals == 0)[0]]

    def embedding_into(self, big: "FqField") -> np.ndarray:
        """Array sending each encoding of self to its image in ``big``."""
        return _embedding(self, big)


@lru_cache(maxsize=None)
def fq_new(p: int, k: int = 1) -> FqField:
    return FqField(p, k)


@lru_cache(maxsize=None)
def _embedding(small: FqField, big: FqField) -> np.ndarray:
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    if small.k == 1:
        return np.arange(small.q, dtype=np.int64)
    rho = min(big.roots([big(c) for c in small.modulus]), key=lambda e: e.n)
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], rho.n))
    dt = small._digit_table
    out = np.zeros(small.q, dtype=np.int64)
    for i, pw in enumerate(powers):
        out = big.vadd(out, big.vmul(dt[:, i], np.full(small.q, pw)))
    return out


class FqElem:
    __slots__ = ("field", "n")

    def __init__(self, field: FqField, n: int):
        self.field = field
        self.n = n

    def _co(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise ValueError(f"mixing {self.field} and {other.field}")
            return other.n
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.add(self.n, o))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.n))

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.add(self.n, self.field.neg(o)))

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.add(o, self.field.neg(self.n)))

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.n, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.n, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(o, self.field.inv(self.n)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.power(self.n, e))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.n))

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return False
        return self.n == o

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.n))

    def __bool__(self):
        return self.n != 0

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.n}"
        return "(" + "+".join(f"{c}*t^{i}" for i, c in enumerate(self.field.digits(self.n)) if c) + ")" if self.n else "0"

    def is_square(self) -> bool:
        if self.n == 0 or self.field.p == 2:
            return True
        return self ** ((self.field.q - 1) // 2) == 1

    def trace(self) -> int:
        """Absolute trace to the prime field, as an int."""
        F = self.field
        acc, tr = self, self
        for _ in range(F.k - 1):
            acc = acc ** F.p
            tr = tr + acc
        return tr.n


def fq_sqrt(x: FqElem) -> FqElem | None:
    """A square root of x, or None when x is a non-square."""
    F = x.field
    if x.n == 0:
        return x
    if F.p == 2:
        # Frobenius is bijective; sqrt(x) = x^(q/2)
        return x ** (F.q // 2)
    if not x.is_square():
        return None
    return _tonelli_shanks(x)


@lru_cache(maxsize=None)
def _nonresidue(F: FqField) -> FqElem:
    for z in F.elements():
        if z.n and not z.is_square():
            return z
    raise RuntimeError("no non-residue")  # pragma: no cover


def _tonelli_shanks(x: FqElem) -> FqElem:
    F = x.field
    Q, S = F.q - 1, 0
    while Q % 2 == 0:
        Q //= 2
        S += 1
    z = _nonresidue(F)
    M, c, t, R = S, z ** Q, x ** Q, x ** ((Q + 1) // 2)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt
            i += 1
        b = c
        for _ in range(M - i - 1):
            b = b * b
        M, c = i, b * b
        t, R = t * c, R * b
    return R


def artin_schreier_count(b: FqElem, c: FqElem) -> int:
    """Number of y in F_q with y^2 + b*y = c, characteristic 2."""
    F = b.field
    if F.p != 2:
        raise WrongCharacteristic("Artin-Schreier count needs characteristic 2")
    if b.n == 0:
        return 1
    return 2 if (c / (b * b)).trace() == 0 else 0


class FqArray:
    """A numpy array of encoded elements of one field, with field arithmetic.

    Lets code written for scalar field elements (such as the transvectant
    routines) run over many inputs at once.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: FqField, a):
        self.field = field
        self.a = np.asarray(a, dtype=np.int64)

    def _co(self, other):
        F = self.field
        if isinstance(other, FqArray):
            return other.a
        if isinstance(other, FqElem):
            return np.int64(other.n)
        return np.int64(F(int(other)).n)

    def __add__(self, other):
        return FqArray(self.field, self.field.vadd(self.a, np.broadcast_to(self._co(other), self.a.shape)))

    __radd__ = __add__

    def __neg__(self):
        return FqArray(self.field, self.field.vneg(self.a))

    def __sub__(self, other):
        return self + (-FqArray(self.field, np.broadcast_to(self._co(other), self.a.shape)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return FqArray(self.field, self.field.vmul(self.a, np.broadcast_to(self._co(other), self.a.shape)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FqArray):
            return FqArray(self.field, self.field.vmul(self.a, self.field.vinv(other.a)))
        inv = (other if isinstance(other, FqElem) else self.field(int(other))).inverse()
        return self * inv

    def __pow__(self, e: int):
        acc = FqArray(self.field, np.ones_like(self.a))
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self):
        return bool(self.a.any())

    def nonzero(self) -> np.ndarray:
        return self.a != 0

    def __len__(self):
        return len(self.a)

    def __getitem__(self, i):
        return FqElem(self.field, int(self.a[i]))
