"""Hecke eigenvalue tables, Euler factors and the Galois case of a form."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .counting import FrobeniusQuartic
from .expr import ExpressionError, evaluate_constant
from .qfield import NotPrimePower, PrimeIdeal, QElem, prime_from_generator, qf_new


class SchemaError(ValueError):
    pass


class ConsistencyError(ValueError):
    pass


class PrimeNotInTable(KeyError):
    pass


class InsufficientData(ValueError):
    pass


class Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


# (D, D', case) for every example in the summary table of the source data.
SUMMARY_CASES = (
    (53, 8, "I"), (61, 12, "I"), (73, 5, "I"), (193, 17, "II"), (233, 17, "II"),
    (277, 29, "II"), (349, 21, "II"), (353, 5, "III"), (373, 93, "II"), (389, 8, "II"),
    (397, 24, "II"), (409, 13, "II"), (421, 5, "I"), (421, 5, "III"), (433, 12, "II"),
    (461, 29, "II"), (613, 21, "II"), (677, 13, "II"), (677, 29, "II"), (677, 85, "II"),
    (709, 5, "II"), (797, 8, "II"), (797, 29, "II"), (809, 5, "II"), (821, 44, "II"),
    (853, 21, "II"), (929, 13, "II"), (997, 13, "II"),
)


def summary_cases(D: int, Dp: int) -> set[Case]:
    return {Case(c) for d, dp, c in SUMMARY_CASES if (d, dp) == (D, Dp)}


@dataclass(frozen=True)
class HeckeRow:
    norm: int
    gen: QElem
    ap: QElem
    s: int | None = None
    t: int | None = None

    @property
    def prime(self) -> PrimeIdeal:
        return prime_from_generator(self.gen)


@dataclass
class HeckeForm:
    baseD: int
    coeffD: int
    rows: list[HeckeRow]
    label: str | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    @property
    def key(self) -> str:
        return f"{self.baseD}/{self.coeffD}" + (f"/{self.label}" if self.label else "")

    @property
    def base_field(self):
        return qf_new(self.baseD)

    @property
    def coeff_field(self):
        return qf_new(self.coeffD)

    def primes(self) -> list[PrimeIdeal]:
        return [r.prime for r in self.rows]

    def row_for(self, P: PrimeIdeal) -> HeckeRow:
        if self._index is None:
            self._index = {r.prime: r for r in self.rows}
        try:
            return self._index[P]
        except KeyError:
            raise PrimeNotInTable(f"{P!r} is not listed for form {self.key}") from None


# validation

def row_violations(f: HeckeForm, i: int, r: HeckeRow) -> list[str]:
    where = f"form {f.key}, row {i + 1} (norm {r.norm}, gen {r.gen})"
    out = []
    try:
        P = prime_from_generator(r.gen)
        if P.norm != r.norm:
            out.append(f"{where}: generator has prime norm {P.norm}")
    except NotPrimePower as exc:
        out.append(f"{where}: {exc}")
    bound = 2 * math.sqrt(r.norm)
    for sign in (1, -1):
        if abs(r.ap.embed(sign)) > bound * (1 + 1e-12):
            out.append(f"{where}: a_p = {r.ap} breaks the Weil bound")
            break
    s_exp, t_exp = r.ap.trace(), r.ap.norm() + 2 * r.norm
    if r.s is not None and r.s != s_exp:
        out.append(f"{where}: s = {r.s} but Tr(a_p) = {s_exp}")
    if r.t is not None and r.t != t_exp:
        out.append(f"{where}: t = {r.t} but N(a_p) + 2N = {t_exp}")
    return out


@dataclass
class ConsistencyReport:
    form: str
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_table_consistency(f: HeckeForm) -> ConsistencyReport:
    out: list[str] = []
    for i, r in enumerate(f.rows):
        out.extend(row_violations(f, i, r))
    return ConsistencyReport(f.key, out)


def _validated(f: HeckeForm) -> HeckeForm:
    rep = check_table_consistency(f)
    if not rep.ok:
        raise ConsistencyError(rep.violations[0])
    return f


# JSON documents

def _triple(K, t, what):
    if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, int) for x in t)):
        raise SchemaError(f"{what} must be an [a, b, den] integer triple, got {t!r}")
    if t[2] == 0:
        raise SchemaError(f"{what} has zero denominator")
    return K(*t)


def form_from_dict(doc: dict, strict: bool = True) -> HeckeForm:
    if not isinstance(doc, dict):
        raise SchemaError("a form must be a JSON object")
    try:
        D, Dp, rows = int(doc["baseD"]), int(doc["coeffD"]), doc["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"form needs integer baseD, coeffD and a rows list: {exc}") from exc
    K, Kf = qf_new(D), qf_new(Dp)
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("label must be a string")
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, dict) or "norm" not in r:
            raise SchemaError(f"row {i + 1} must be an object with a norm")
        s, t = r.get("s"), r.get("t")
        if (s is not None and not isinstance(s, int)) or (t is not None and not isinstance(t, int)):
            raise SchemaError(f"row {i + 1}: s and t must be integers")
        out.append(HeckeRow(int(r["norm"]), _triple(K, r.get("gen"), f"row {i + 1} gen"),
                            _triple(Kf, r.get("ap"), f"row {i + 1} ap"), s, t))
    form = HeckeForm(D, Dp, out, label)
    return _validated(form) if strict else form


def form_to_dict(f: HeckeForm) -> dict:
    doc: dict = {"baseD": f.baseD, "coeffD": f.coeffD}
    if f.label:
        doc["label"] = f.label
    rows = []
    for r in f.rows:
        row = {"norm": r.norm, "gen": r.gen.triple(), "ap": r.ap.triple()}
        if r.s is not None:
            row["s"] = r.s
        if r.t is not None:
            row["t"] = r.t
        rows.append(row)
    doc["rows"] = rows
    return doc


def parse_forms(document, strict: bool = True) -> list[HeckeForm]:
    """Forms from a JSON document: one form object, a list, or {"forms": [...]}.

    With ``strict`` the first consistency violation raises; otherwise rows are
    kept as given and check_table_consistency reports them.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from exc
    if isinstance(document, dict) and "forms" in document:
        document = document["forms"]
    if isinstance(document, dict):
        document = [document]
    if not isinstance(document, list):
        raise SchemaError("expected a form object or a list of forms")
    return [form_from_dict(d, strict) for d in document]


def serialize(forms: list[HeckeForm]) -> str:
    return json.dumps({"forms": [form_to_dict(f) for f in forms]}, indent=1)


# TSV

def parse_tsv(text: str, baseD: int, coeffD: int, label: str | None = None,
              strict: bool = True) -> HeckeForm:
    """Rows with a header naming norm, gen, ap and optionally s, t."""
    K, Kf = qf_new(baseD), qf_new(coeffD)
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise SchemaError("empty TSV block")
    header = [h.strip() for h in lines[0].split("\t")]
    if header[:3] != ["norm", "gen", "ap"]:
        raise SchemaError(f"TSV header must start with norm, gen, ap; got {header}")
    rows = []
    for i, ln in enumerate(lines[1:]):
        cells = [c.strip() for c in ln.split("\t")]
        if len(cells) != len(header):
            raise SchemaError(f"TSV row {i + 1} has {len(cells)} cells, expected {len(header)}")
        rec = dict(zip(header, cells))
        try:
            gen = evaluate_constant(rec["gen"], {"w": [K.w]}, K.one)
            ap = evaluate_constant(rec["ap"], {"e": [Kf.w]}, Kf.one)
            s = int(rec["s"]) if rec.get("s") else None
            t = int(rec["t"]) if rec.get("t") else None
            rows.append(HeckeRow(int(rec["norm"]), gen, ap, s, t))
        except (ExpressionError, ValueError) as exc:
            raise SchemaError(f"TSV row {i + 1}: {exc}") from exc
    form = HeckeForm(baseD, coeffD, rows, label)
    return _validated(form) if strict else form


def parse_sectioned_tsv(text: str, strict: bool = True) -> list[HeckeForm]:
    """Several TSV blocks, each introduced by a '## D/D'[/label]' line."""
    forms, name, buf = [], None, []

    def flush():
        if name is not None:
            parts = name.split("/")
            forms.append(parse_tsv("\n".join(buf), int(parts[0]), int(parts[1]),
                                   parts[2] if len(parts) > 2 else None, strict))

    for ln in text.splitlines():
        if ln.startswith("## "):
            flush()
            name, buf = ln[3:].strip(), []
        elif name is not None:
            buf.append(ln)
    flush()
    return forms


@lru_cache(maxsize=None)
def _embedded() -> tuple[HeckeForm, ...]:
    text = resources.files("goodred.data").joinpath("hecke.tsv").read_text()
    return tuple(parse_sectioned_tsv(text, strict=False))


def embedded_forms() -> list[HeckeForm]:
    return list(_embedded())


def select_form(selector: str, forms: list[HeckeForm] | None = None) -> HeckeForm:
    """Pick a form by 'D/D'' or 'D/D'/label'; ambiguous selectors are errors."""
    forms = embedded_forms() if forms is None else forms
    exact = [f for f in forms if f.key == selector]
    if exact:
        return exact[0]
    parts = selector.split("/")
    if len(parts) != 2:
        raise KeyError(f"no form {selector!r}")
    hits = [f for f in forms if (str(f.baseD), str(f.coeffD)) == tuple(parts)]
    if not hits:
        raise KeyError(f"no form {selector!r}")
    if len(hits) > 1:
        raise KeyError(f"{selector!r} is ambiguous: use one of {[f.key for f in hits]}")
    return hits[0]


# Euler factors and cases

def euler_factor(f: HeckeForm, P: PrimeIdeal) -> FrobeniusQuartic:
    r = f.row_for(P)
    q = P.norm
    s, t = r.ap.trace(), r.ap.norm() + 2 * q
    return FrobeniusQuartic(q, int(s), int(t))


def split_pairs(f: HeckeForm) -> list[tuple[HeckeRow, HeckeRow]]:
    """Rows for both primes above each split rational prime."""
    by_p: dict[int, list[HeckeRow]] = {}
    for r in f.rows:
        P = r.prime
        if P.deg == 1 and not P.ramified:
            by_p.setdefault(P.p, []).append(r)
    return [(v[0], v[1]) for p, v in sorted(by_p.items()) if len(v) == 2 and v[0].prime != v[1].prime]


def classify_case(f: HeckeForm, min_pairs: int = 3) -> Case:
    pairs = split_pairs(f)
    if len(pairs) < min_pairs:
        raise InsufficientData(f"form {f.key} has only {len(pairs)} complete split pairs")
    if all(a.ap == b.ap for a, b in pairs):
        return Case.I
    if all(a.ap.conj() == b.ap for a, b in pairs):
        return Case.II
    return Case.III
