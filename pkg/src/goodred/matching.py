"""Matching curves and surface points against Hecke eigenvalue data.

A match is judged prime by prime: the Frobenius quartic of a reduction is
compared with the Euler factor built from the form's eigenvalue.  Because a
quadratic twist flips T to -T, "up-to-sign" mode also accepts the twisted
factor and records which sign was seen.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .counting import FrobeniusQuartic, frobenius_charpoly
from .curve import BadReduction, GenusTwoCurve, discriminant, reduce_mod
from .finitefield import FqArray
from .hecke import HeckeForm, euler_factor
from .qfield import DenominatorClash, PrimeIdeal, QElem, QuadField, local_root, qf_new, reduce_elem, reduce_local
from .surfaces import (
    CandidatePoint, DenominatorVanishes, MapMissing, NonGenericStratum, SurfaceModel,
    enumerate_points, field_box, ic_at, is_candidate_point, mestre_reconstruct,
)

log = logging.getLogger("goodred")

MODES = ("exact", "up-to-sign")


class FieldMismatch(ValueError):
    pass


@dataclass
class PrimeRecord:
    norm: int
    gen: str
    s_obs: int
    t_obs: int
    s_exp: int
    t_exp: int
    sign: str  # "+", "-" or "fail"


@dataclass
class SkipRecord:
    norm: int
    gen: str
    reason: str


@dataclass
class MatchReport:
    mode: str
    records: list[PrimeRecord] = field(default_factory=list)
    skipped: list[SkipRecord] = field(default_factory=list)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    @property
    def verdict(self) -> str:
        bad = {"fail"} if self.mode == "up-to-sign" else {"fail", "-"}
        return "fail" if any(r.sign in bad for r in self.records) else "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def sign_pattern(self) -> str:
        return "".join(r.sign if r.sign != "fail" else "x" for r in self.records)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "mode": self.mode,
                "records": [asdict(r) for r in self.records],
                "skipped": [asdict(s) for s in self.skipped]}

    @classmethod
    def from_json(cls, doc: dict) -> "MatchReport":
        rep = cls(doc["mode"], [PrimeRecord(**r) for r in doc["records"]],
                  [SkipRecord(**s) for s in doc["skipped"]])
        if "verdict" in doc and doc["verdict"] != rep.verdict:
            raise ValueError("stored verdict disagrees with the records")
        return rep


def compare(observed: FrobeniusQuartic, expected: FrobeniusQuartic) -> str:
    if observed == expected:
        return "+"
    if observed == expected.twisted():
        return "-"
    return "fail"


def _record(P: PrimeIdeal, gen: str, obs: FrobeniusQuartic, exp: FrobeniusQuartic) -> PrimeRecord:
    return PrimeRecord(P.norm, gen, obs.s, obs.t, exp.s, exp.t, compare(obs, exp))


def _map(fn, items, jobs: int):
    """Ordered map, optionally across worker processes."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# --- curves against forms ---

def _support_primes(x: QElem) -> set[int]:
    n = x.norm()
    out, m = set(), abs(n.numerator) * n.denominator
    p = 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return out


def _verify_row(args):
    C, f, i, bad_chars = args
    row = f.rows[i]
    P, gen = row.prime, str(row.gen)
    if P.p in bad_chars:
        return SkipRecord(P.norm, gen, "residue char divides disc")
    try:
        Cp = reduce_mod(C, P)
    except DenominatorClash:
        return SkipRecord(P.norm, gen, "coefficient denominator")
    except BadReduction:
        return SkipRecord(P.norm, gen, "bad reduction of the model")
    return _record(P, gen, frobenius_charpoly(Cp), euler_factor(f, P))


def verify_curve_against_form(C: GenusTwoCurve, f: HeckeForm, norm_bound: int | None = None,
                              mode: str = "up-to-sign", jobs: int = 1) -> MatchReport:
    """Compare Frobenius quartics of C with the Euler factors of f at table primes."""
    if not isinstance(C.base, QuadField) or C.base.disc != f.baseD:
        raise FieldMismatch(f"curve over {C.base!r} but form {f.key} lives over Q(sqrt {f.baseD})")
    bad_chars = _support_primes(discriminant(C))
    idx = [i for i, r in enumerate(f.rows) if norm_bound is None or r.norm <= norm_bound]
    rep = MatchReport(mode)
    for out in _map(_verify_row, [(C, f, i, bad_chars) for i in idx], jobs):
        (rep.skipped if isinstance(out, SkipRecord) else rep.records).append(out)
    return rep


# --- surface points against forms ---

def usable_primes(f: HeckeForm, budget: int | None = None) -> list[tuple[PrimeIdeal, str]]:
    """Table primes of residue characteristic > 5, in table order."""
    out = [(r.prime, str(r.gen)) for r in f.rows if r.prime.p > 5]
    return out if budget is None else out[:budget]


def _reduce_point(P: PrimeIdeal, x):
    """Residue of a rational or field element at P; DenominatorClash if not integral."""
    if not isinstance(x, QElem):
        x = Fraction(x)
        x = P.field(x.numerator, 0, x.denominator)
    return reduce_local(P, x)


def _screen_residues(m: SurfaceModel, P: PrimeIdeal, rr, ss, expected: FrobeniusQuartic):
    """Verdict at P for a point reducing to (rr, ss): ("ok", sign, obs), ("skip", why) or ("fail", obs).

    ``rr`` and ``ss`` are residue field elements.  Everything here depends only
    on the residues, which is what lets the hunt tabulate it.
    """
    vals = []
    for num, den in m.icmap:
        d = den(rr, ss)
        if not d:
            return ("skip", "invariant denominator vanishes mod P")
        vals.append(num(rr, ss) / d)
    if not vals[3]:
        return ("skip", "I10 vanishes mod P")
    try:
        C = mestre_reconstruct(vals, P.residue_field)
    except NonGenericStratum as exc:
        return ("skip", f"non-generic stratum: {exc}")
    obs = frobenius_charpoly(C)
    sign = compare(obs, expected)
    return ("fail", obs) if sign == "fail" else ("ok", sign, obs)


def _screen_one(m, f, P, gen, r, s):
    if P.p in (2, 3, 5):
        return SkipRecord(P.norm, gen, "residue char 2, 3 or 5")
    try:
        rr, ss = _reduce_point(P, r), _reduce_point(P, s)
    except DenominatorClash:
        return SkipRecord(P.norm, gen, "point not integral at P")
    exp = euler_factor(f, P)
    out = _screen_residues(m, P, rr, ss, exp)
    if out[0] == "skip":
        return SkipRecord(P.norm, gen, out[1])
    return _record(P, gen, out[-1], exp)


def screen_point(m: SurfaceModel, f: HeckeForm, r, s, primes=None, budget: int | None = 10,
                 early_abort: bool = False) -> MatchReport:
    """Reduce the point's invariants at each prime, rebuild a curve, compare up to sign.

    ``primes`` is a list of (PrimeIdeal, label) pairs; by default the first
    ``budget`` usable table primes of f.
    """
    if m.icmap is None:
        raise MapMissing(f"model D' = {m.coeffD} has no Igusa-Clebsch map")
    ic_at(m, r, s)  # raises DenominatorVanishes off the map's domain
    primes = usable_primes(f, budget) if primes is None else primes
    rep = MatchReport("up-to-sign")
    for P, gen in primes:
        out = _screen_one(m, f, P, gen, r, s)
        if isinstance(out, SkipRecord):
            rep.skipped.append(out)
            continue
        rep.records.append(out)
        if early_abort and out.sign == "fail":
            break
    return rep


# --- hunting ---

@dataclass
class Survivor:
    point: CandidatePoint
    report: MatchReport

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "report": self.report.to_json()}


def _screen_candidate(args):
    m, f, cand, primes = args
    try:
        rep = screen_point(m, f, cand.r, cand.s, primes, early_abort=True)
    except DenominatorVanishes:
        return None
    return rep if rep.passed else None


def _residue_vector(P: PrimeIdeal, a: np.ndarray, b: np.ndarray, den: int) -> np.ndarray:
    """Residue encodings of (a + b w)/den at P; P.norm marks non-integral entries."""
    F, p, q = P.residue_field, P.p, P.norm
    if den % p == 0:
        if P.deg != 1 or P.ramified:
            K = P.field
            out = np.empty(len(a), dtype=np.int64)
            for k, (x, y) in enumerate(zip(a.tolist(), b.tolist())):
                try:
                    out[k] = reduce_local(P, K(x, y, den)).n
                except DenominatorClash:
                    out[k] = q
            return out
        v, d = 0, den
        while d % p == 0:
            d, v = d // p, v + 1
        mod = p ** (v + 1)
        num = (a + b * local_root(P, v + 1)) % mod
        integral = num % p ** v == 0
        res = (num // p ** v) * pow(d, -1, p) % p
        return np.where(integral, res, q)
    inv = F(den).inverse()
    if P.deg == 1:
        return (a + b * P.root) * inv.n % p
    return F.vmul(F.vadd(a % p, F.vmul(b % p, np.full_like(a, P.root.n))), np.full_like(a, inv.n))


def acceptance_table(m: SurfaceModel, f: HeckeForm, P: PrimeIdeal) -> np.ndarray:
    """(q+1) x (q+1) table: can a candidate reducing to (i, j) pass at P?

    It combines the screen verdict with the necessary condition that the
    cover value be a square mod P; the last row and column stand for
    non-integral coordinates and always pass.
    """
    F, q = P.residue_field, P.norm
    exp = euler_factor(f, P)
    T = np.ones((q + 1, q + 1), dtype=bool)
    grid_r = FqArray(F, np.repeat(np.arange(q), q))
    grid_s = FqArray(F, np.tile(np.arange(q), q))
    cover = m.cover(grid_r, grid_s).a
    sq = F.quadratic_character[cover] >= 0
    for k in np.flatnonzero(sq):
        i, j = divmod(int(k), q)
        if _screen_residues(m, P, F.elem(i), F.elem(j), exp)[0] == "fail":
            sq[k] = False
    T[:q, :q] = sq.reshape(q, q)
    return T


def _table_job(args):
    m, f, P = args
    return acceptance_table(m, f, P)


_BRUTE = 4096


def _join(tables, res_r, res_s):
    """Index pairs (i, j) allowed by every table, found by residue-class splitting."""
    L = len(tables)
    hits: list[tuple[np.ndarray, np.ndarray]] = []

    def brute(R, S, level):
        ok = np.ones((len(R), len(S)), dtype=bool)
        for l in range(level, L):
            ok &= tables[l][res_r[l][R][:, None], res_s[l][S][None, :]]
        i, j = np.nonzero(ok)
        if len(i):
            hits.append((R[i], S[j]))

    def groups(idx, res):
        order = np.argsort(res[idx], kind="stable")
        keys, starts = np.unique(res[idx][order], return_index=True)
        return dict(zip(keys.tolist(), np.split(idx[order], starts[1:])))

    def rec(R, S, level):
        if level == L or len(R) * len(S) <= _BRUTE:
            brute(R, S, level)
            return
        T = tables[level]
        gs = groups(S, res_s[level])
        for alpha, Ra in groups(R, res_r[level]).items():
            row = T[alpha]
            for beta, Sb in gs.items():
                if row[beta]:
                    rec(Ra, Sb, level + 1)

    rec(np.arange(len(res_r[0]) if L else 0), np.arange(len(res_s[0]) if L else 0), 0)
    if not hits:
        return []
    i = np.concatenate([h[0] for h in hits])
    j = np.concatenate([h[1] for h in hits])
    return sorted(zip(i.tolist(), j.tolist()))


def hunt(m: SurfaceModel, f: HeckeForm, height: int | None = None, box: tuple[int, int] | None = None,
         budget: int = 10, jobs: int = 1, strategy: str = "join") -> list[Survivor]:
    """Candidate points whose reconstructed curves match f at ``budget`` primes.

    Rational mode (``height``) streams ``enumerate_points`` and screens each
    candidate with early abort.  Field mode (``box`` = (bound, den)) either does
    the same over the box (``strategy="naive"``) or first joins per-prime
    acceptance tables over residue classes and only then runs the exact checks
    (``strategy="join"``); both return the same survivors in box order.
    """
    if m.icmap is None:
        raise MapMissing(f"model D' = {m.coeffD} has no Igusa-Clebsch map")
    primes = usable_primes(f, budget)
    if box is not None and strategy == "join" and primes:
        return _hunt_join(m, f, box, primes, jobs)
    cands = list(enumerate_points(m, f.baseD, height, box=box))
    log.info("%d candidate points to screen at %d primes", len(cands), len(primes))
    reports = _map(_screen_candidate, [(m, f, c, primes) for c in cands], jobs)
    return [Survivor(c, rep) for c, rep in zip(cands, reports) if rep is not None]


def _hunt_join(m, f, box, primes, jobs):
    bound, den = box
    K = qf_new(f.baseD)
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    a = np.repeat(side, len(side))
    b = np.tile(side, len(side))
    log.info("building acceptance tables at %d primes", len(primes))
    tables = _map(_table_job, [(m, f, P) for P, _ in primes], jobs)
    res = [_residue_vector(P, a, b, den) for P, _ in primes]
    for (P, gen), T in zip(primes, tables):
        log.info("prime %s of norm %d passes %.3f of residue pairs", gen, P.norm, T[:-1, :-1].mean())
    pairs = _join(tables, res, res)
    log.info("%d index pairs survive the residue join", len(pairs))
    out = []
    for i, j in pairs:
        r, s = K(int(a[i]), int(b[i]), den), K(int(a[j]), int(b[j]), den)
        cand = is_candidate_point(m, f.baseD, r, s)
        if cand is None:
            continue
        rep = _screen_candidate((m, f, cand, primes))
        if rep is not None:
            out.append(Survivor(cand, rep))
    return out
