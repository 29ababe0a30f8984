"""Point counts, Frobenius characteristic polynomials and Jacobian orders."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .curve import GenusTwoCurve
from .finitefield import FqField, fq_new


@dataclass(frozen=True)
class FrobeniusQuartic:
    """chi(T) = T^4 - s T^3 + t T^2 - q s T + q^2."""

    q: int
    s: int
    t: int

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        """Coefficients from T^4 down to the constant term."""
        return (1, -self.s, self.t, -self.q * self.s, self.q * self.q)

    def __call__(self, T: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * T + c
        return acc

    def twisted(self) -> "FrobeniusQuartic":
        """The quartic chi(-T) of the quadratic twist."""
        return FrobeniusQuartic(self.q, -self.s, self.t)

    @property
    def group_order(self) -> int:
        return self(1)

    def satisfies_weil(self) -> bool:
        q = self.q
        # |s| <= 4 sqrt(q) and |t| <= 6q, checked without floating point
        return self.s * self.s <= 16 * q and abs(self.t) <= 6 * q and self(1) >= 0

    def power_sums(self, n: int) -> list[int]:
        """Newton power sums p_1..p_n of the four Frobenius eigenvalues."""
        e = [1, self.s, self.t, self.q * self.s, self.q * self.q]
        p: list[int] = []
        for k in range(1, n + 1):
            acc = 0
            for i in range(1, min(k, 4) + 1):
                term = e[i] * (p[k - i - 1] if k - i >= 1 else 0)
                acc += (-1) ** (i - 1) * term
            if k <= 4:
                acc += (-1) ** (k - 1) * k * e[k]
            p.append(acc)
        return p

    def predicted_count(self, n: int) -> int:
        """#C(F_{q^n}) implied by this quartic."""
        return self.q ** n + 1 - self.power_sums(n)[-1]


def _extension(C: GenusTwoCurve, n: int) -> tuple[FqField, list[int], list[int]]:
    F = C.base
    if not isinstance(F, FqField):
        raise TypeError("point counting needs a curve over a finite field")
    big = fq_new(F.p, F.k * n)
    emb = F.embedding_into(big)
    return big, [int(emb[c.n]) for c in C.P], [int(emb[c.n]) for c in C.Q]


def _infinity_count(big: FqField, P: list[int], Q: list[int]) -> int:
    p6, q3 = P[6], Q[3]
    if big.p == 2:
        if q3 == 0:
            return 1  # Frobenius is bijective: exactly one Y with Y^2 = p6
        c = big.mul(p6, big.inv(big.mul(q3, q3)))
        return 2 if int(big.trace_table[c]) == 0 else 0
    disc = big.add(big.mul(q3, q3), big.mul(4 % big.p, p6))
    return 1 + int(big.quadratic_character[disc])


def count_points(C: GenusTwoCurve, n: int = 1) -> int:
    """Number of points of the smooth projective model over F_{q^n}."""
    big, P, Q = _extension(C, n)
    xs = np.arange(big.q, dtype=np.int64)
    Pv = big.vpoly(P, xs)
    Qv = big.vpoly(Q, xs)
    if big.p == 2:
        zero_q = Qv == 0
        ratio = big.vmul(Pv, big.vinv(big.vmul(Qv, Qv)))
        two = (big.trace_table[ratio] == 0) & ~zero_q
        affine = int(zero_q.sum()) + 2 * int(two.sum())
    else:
        disc = big.vadd(big.vmul(Qv, Qv), big.vmul(np.full_like(Pv, 4 % big.p), Pv))
        affine = big.q + int(big.quadratic_character[disc].sum())
    return affine + _infinity_count(big, P, Q)


def frobenius_charpoly(C: GenusTwoCurve) -> FrobeniusQuartic:
    q = C.base.q
    n1, n2 = count_points(C, 1), count_points(C, 2)
    s = q + 1 - n1
    s2 = q * q + 1 - n2
    t2 = s * s - s2
    if t2 % 2:
        raise ArithmeticError("odd Newton residue; point counts are inconsistent")
    return FrobeniusQuartic(q, s, t2 // 2)


def jacobian_order(C: GenusTwoCurve) -> int:
    return frobenius_charpoly(C).group_order


def weil_lower_bound(q: int) -> int:
    """floor((sqrt(q) - 1)^4), a lower bound for any Jacobian order over F_q."""
    r = isqrt(q)
    return max(r - 1, 0) ** 4
