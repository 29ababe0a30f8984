"""Command-line front end.

Reports go to stdout (or to the file named by --json); progress and errors go
to stderr.  Exit status: 0 success or pass, 1 fail verdict, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .counting import frobenius_charpoly
from .curve import BadCharacteristic, GenusTwoCurve, discriminant, embedded_curve, igusa_clebsch
from .expr import ExpressionError, evaluate_constant, evaluate_poly
from .finitefield import fq_new
from .hecke import (
    InsufficientData, PrimeNotInTable, SchemaError, check_table_consistency, classify_case,
    embedded_forms, euler_factor, form_to_dict, parse_forms, parse_sectioned_tsv, select_form,
    summary_cases,
)
from .jacobian import torsion_survey
from .matching import FieldMismatch, hunt, screen_point, verify_curve_against_form
from .qfield import NotFundamental, factor_ideal, format_qelem, qf_new, unit_exponent
from .surfaces import (
    DenominatorVanishes, MapMissing, NonGenericStratum, NotFound, UnknownModel, enumerate_points,
    exhaustive_reconstruct, ic_at, load_model, mestre_reconstruct, registry_get,
)

log = logging.getLogger("goodred")

# the order-7 divisor on the D = 53 curve: x^2 - w x + 3 = 0, y = (-6w - 12) x + 2w + 18
TORSION_DEFAULTS = {"53/8": ("x^2 - wx + 3", "(-6w - 12)x + 2w + 18", 7)}


class InputError(Exception):
    pass


# --- loaders ---

def _load_forms(path: str | None):
    if path is None:
        return embedded_forms()
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith(("{", "[")):
        return parse_forms(text)
    return parse_sectioned_tsv(text)


def _form(args):
    return select_form(args.form, _load_forms(args.forms_file))


def _curve(spec: str) -> GenusTwoCurve:
    if os.path.exists(spec):
        with open(spec) as fh:
            return GenusTwoCurve.from_json(fh.read())
    return embedded_curve(spec)


def _surface(spec: str):
    if os.path.exists(spec):
        return load_model(spec)
    try:
        return registry_get(int(spec))
    except ValueError:
        raise InputError(f"--surface needs D' or a model file, got {spec!r}") from None


def _point(text: str, D: int):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"a point is written r,s; got {text!r}")
    K = qf_new(D)
    return tuple(evaluate_constant(p, {"w": [K.w]}, K.one) for p in parts)


def _emit(args, doc, lines):
    if args.json == "-":
        print(json.dumps(doc, indent=1))
        return
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    for ln in lines:
        print(ln)


def _fmt(x) -> str:
    return format_qelem(x) if hasattr(x, "triple") else str(x)


def _report_lines(rep) -> list[str]:
    out = [f"verdict: {rep.verdict} ({rep.mode})"]
    for r in rep.records:
        out.append(f"  N={r.norm:<5} {r.gen:<12} obs=({r.s_obs},{r.t_obs}) exp=({r.s_exp},{r.t_exp}) {r.sign}")
    for s in rep.skipped:
        out.append(f"  N={s.norm:<5} {s.gen:<12} skipped: {s.reason}")
    return out


# --- subcommands ---

def cmd_forms(args) -> int:
    forms = _load_forms(args.forms_file)
    if args.form:
        forms = [select_form(args.form, forms)]
    rows, lines, bad = [], [], 0
    for f in forms:
        try:
            case = classify_case(f).value
        except InsufficientData:
            case = None
        expected = sorted(c.value for c in summary_cases(f.baseD, f.coeffD))
        rep = check_table_consistency(f)
        case_ok = case is None or not expected or case in expected
        rows.append({"form": f.key, "rows": len(f.rows), "case": case, "summary_cases": expected,
                     "violations": rep.violations, "case_ok": case_ok})
        lines.append(f"{f.key:<12} rows={len(f.rows):<3} case={case or '?':<4} summary={','.join(expected) or '-'}")
        if args.check:
            for v in rep.violations:
                lines.append(f"  violation: {v}")
            if not case_ok:
                lines.append(f"  case {case} is not among the summary cases {expected}")
            bad += len(rep.violations) + (not case_ok)
    doc = {"forms": rows}
    if args.check:
        doc["ok"] = bad == 0
        lines.append(f"check: {'ok' if bad == 0 else f'{bad} problem(s)'}")
    _emit(args, doc, lines)
    return 1 if args.check and bad else 0


def cmd_euler(args) -> int:
    f = _form(args)
    rows, lines = [], [f"form {f.key}: Q_P(T) = T^4 - s T^3 + t T^2 - q s T + q^2"]
    for r in f.rows:
        Q = euler_factor(f, r.prime)
        rows.append({"norm": r.norm, "gen": str(r.gen), "ap": r.ap.triple(), "s": Q.s, "t": Q.t,
                     "coeffs": list(Q.coeffs)})
        lines.append(f"  N={r.norm:<5} {str(r.gen):<12} a_P={format_qelem(r.ap, 'e'):<10} s={Q.s:<4} t={Q.t}")
    _emit(args, {"form": f.key, "factors": rows}, lines)
    return 0


def _disc_summary(C) -> tuple[dict, list[str]]:
    d = discriminant(C)
    facs = factor_ideal(d)
    doc = {"disc": d.triple(), "norm": str(d.norm()),
           "factors": [{"prime": P.label(), "norm": P.norm, "exp": e} for P, e in facs]}
    lines = [f"discriminant: {format_qelem(d)}  (norm {d.norm()})"]
    if not facs:
        sign, k = unit_exponent(d)
        eps = C.base.fundamental_unit
        doc["unit"] = {"sign": sign, "eps": eps.triple(), "exponent": k}
        lines.append(f"  unit: {'-' if sign < 0 else ''}eps^{k} with eps = {format_qelem(eps)}")
    else:
        lines.append("  ideal factorisation: " + " * ".join(f"{P.label()}^{e}" for P, e in facs))
    return doc, lines


def cmd_invariants(args) -> int:
    if args.curve:
        C = _curve(args.curve)
        ic = igusa_clebsch(C)
        doc, lines = _disc_summary(C)
        doc["curve"] = C.to_json()
    else:
        if not (args.surface and args.point and args.base):
            raise InputError("give --curve, or --surface with --point and --base")
        m = _surface(args.surface)
        r, s = _point(args.point, args.base)
        ic = ic_at(m, r, s)
        doc, lines = {"surface": m.coeffD, "point": [r.triple(), s.triple()]}, []
    doc["igusa_clebsch"] = [x.triple() for x in ic]
    lines.insert(0, "Igusa-Clebsch: (" + ", ".join(_fmt(x) for x in ic) + ")")
    _emit(args, doc, lines)
    return 0


def cmd_verify(args) -> int:
    C, f = _curve(args.curve), _form(args)
    mode = "exact" if args.mode == "exact" else "up-to-sign"
    rep = verify_curve_against_form(C, f, args.bound, mode, jobs=args.jobs)
    head, lines = _disc_summary(C)
    doc = {"curve": args.curve, "form": f.key, "discriminant": head, **rep.to_json()}
    _emit(args, doc, lines + _report_lines(rep))
    return 0 if rep.passed else 1


def cmd_screen(args) -> int:
    m, f = _surface(args.surface), _form(args)
    r, s = _point(args.point, f.baseD)
    rep = screen_point(m, f, r, s, budget=args.primes)
    doc = {"surface": m.coeffD, "form": f.key, "point": [r.triple(), s.triple()], **rep.to_json()}
    _emit(args, doc, _report_lines(rep))
    return 0 if rep.passed else 1


def _box(text: str) -> tuple[int, int]:
    try:
        num, den = text.split("/")
        return int(num), int(den)
    except ValueError:
        raise InputError(f"--field-box needs NUM/DEN, got {text!r}") from None


def cmd_hunt(args) -> int:
    m = _surface(args.surface)
    box = _box(args.field_box) if args.field_box else None
    if box is None and args.height is None:
        raise InputError("give --height or --field-box")
    if args.form is None:
        if args.base is None:
            raise InputError("give --form, or --base for a candidate listing")
        cands = list(enumerate_points(m, args.base, args.height, box=box))
        doc = {"surface": m.coeffD, "base": args.base, "candidates": [c.to_json() for c in cands]}
        lines = [f"{len(cands)} candidate points"] + [
            f"  r={_fmt(c.r)}  s={_fmt(c.s)}  f={_fmt(c.cover_value)}  class={c.square_class}" for c in cands]
        _emit(args, doc, lines)
        return 0 if cands else 1
    f = _form(args)
    survivors = hunt(m, f, args.height, box, budget=args.primes, jobs=args.jobs)
    doc = {"surface": m.coeffD, "form": f.key, "survivors": [s.to_json() for s in survivors]}
    lines = [f"{len(survivors)} survivor(s)"]
    for s in survivors:
        lines.append(f"  r={_fmt(s.point.r)}  s={_fmt(s.point.s)}  signs={s.report.sign_pattern()}")
    _emit(args, doc, lines)
    return 0 if survivors else 1


def cmd_mestre(args) -> int:
    F = fq_new(args.p, args.k)
    try:
        ic = [F(int(x)) for x in args.ic.split(",")]
    except ValueError:
        raise InputError(f"--ic needs four integers, got {args.ic!r}") from None
    if len(ic) != 4:
        raise InputError("--ic needs exactly four values")
    C = (exhaustive_reconstruct if args.exhaustive else mestre_reconstruct)(ic, F)
    chi = frobenius_charpoly(C)
    doc = {"q": F.q, "sextic": [c.n for c in C.P], "s": chi.s, "t": chi.t}
    lines = [f"y^2 = f(x) over F_{F.q}, f coefficients (low to high, encoded): {[c.n for c in C.P]}",
             f"Frobenius: s={chi.s} t={chi.t} (the twist has s={-chi.s})"]
    _emit(args, doc, lines)
    return 0


def cmd_torsion(args) -> int:
    C = _curve(args.curve)
    K = C.base
    dflt = TORSION_DEFAULTS.get(args.curve)
    u_text = args.u or (dflt[0] if dflt else None)
    v_text = args.v or (dflt[1] if dflt else None)
    n = args.order or (dflt[2] if dflt else None)
    if n is None:
        raise InputError("give --order")
    sym = {"w": [K.w], "x": [K.zero, K.one]}
    u = evaluate_poly(u_text, sym, K.one) if u_text else None
    v = evaluate_poly(v_text, sym, K.one) if v_text else None
    rows = torsion_survey(C, n, args.bound, u, v)
    good = [r for r in rows if r.group_order is not None]
    fails = [r for r in good if not r.divisible]
    exact = [r for r in good if r.exact_order is not None]
    doc = {"curve": args.curve, "order": n, "bound": args.bound,
           "rows": [vars(r) for r in rows],
           "divisible_everywhere": not fails,
           "exact_true": sum(r.exact_order is True for r in exact),
           "exact_false": sum(r.exact_order is False for r in exact)}
    lines = [f"{len(good)} good primes with norm <= {args.bound}; {n} | #J at {len(good) - len(fails)}"]
    if u is not None:
        lines.append(f"divisor of order exactly {n} at {doc['exact_true']} usable primes, "
                     f"wrong order at {doc['exact_false']}")
    for r in rows:
        mark = "-" if r.group_order is None else ("ok" if r.divisible else "FAIL")
        order = {True: "order ok", False: "order WRONG", None: r.note or ""}[r.exact_order]
        lines.append(f"  N={r.norm:<5} {r.prime:<14} #J={r.group_order}  {mark}  {order}")
    _emit(args, doc, lines)
    return 0 if not fails and not doc["exact_false"] else 1


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="goodred", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-q", "--quiet", action="store_true", help="only warnings on stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, form=False):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
        if form:
            sp.add_argument("--form", metavar="D/D'[/label]", required=form == "required")
            sp.add_argument("--forms-file", metavar="PATH", help="JSON or sectioned TSV forms")
        return sp

    sp = common(sub.add_parser("forms", help="list eigenform tables"), form=True)
    sp.add_argument("--check", action="store_true", help="validate every row and case")
    sp.set_defaults(fn=cmd_forms)

    sp = common(sub.add_parser("euler", help="Euler factors of a form"), form="required")
    sp.set_defaults(fn=cmd_euler)

    sp = common(sub.add_parser("invariants", help="Igusa-Clebsch invariants of a curve or surface point"))
    sp.add_argument("--curve", help="embedded key (e.g. 53/8) or curve JSON file")
    sp.add_argument("--surface", help="D' or a model file")
    sp.add_argument("--point", help="r,s as expressions in w")
    sp.add_argument("--base", type=int, help="D of the base field")
    sp.set_defaults(fn=cmd_invariants)

    sp = common(sub.add_parser("verify", help="match a curve against a form"), form="required")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--bound", type=int, help="largest prime norm to use")
    sp.add_argument("--mode", choices=("exact", "sign"), default="sign")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(fn=cmd_verify)

    sp = common(sub.add_parser("screen", help="screen one surface point against a form"), form="required")
    sp.add_argument("--surface", required=True)
    sp.add_argument("--point", required=True, help="r,s as expressions in w")
    sp.add_argument("--primes", type=int, default=10)
    sp.set_defaults(fn=cmd_screen)

    sp = common(sub.add_parser("hunt", help="search a surface for matching points"), form=True)
    sp.add_argument("--surface", required=True)
    sp.add_argument("--base", type=int, help="list candidates over Q(sqrt D) without a form")
    sp.add_argument("--height", type=int)
    sp.add_argument("--field-box", metavar="NUM/DEN")
    sp.add_argument("--primes", type=int, default=10)
    sp.add_argument("--mode", choices=("exact", "sign"), default="sign",
                    help="screening is always up to sign; accepted for symmetry with verify")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(fn=cmd_hunt)

    sp = common(sub.add_parser("mestre", help="rebuild a curve over F_q from invariants"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--ic", required=True, help="I2,I4,I6,I10 as integers")
    sp.add_argument("--exhaustive", action="store_true", help="use the brute-force search (q <= 9)")
    sp.set_defaults(fn=cmd_mestre)

    sp = common(sub.add_parser("torsion", help="torsion evidence at many primes"))
    sp.add_argument("--curve", default="53/8")
    sp.add_argument("--order", type=int)
    sp.add_argument("--bound", type=int, default=200)
    sp.add_argument("--u", help="monic quadratic for the divisor, in x and w")
    sp.add_argument("--v", help="its y-coordinate polynomial, in x and w")
    sp.set_defaults(fn=cmd_torsion)
    return p


INPUT_ERRORS = (InputError, SchemaError, KeyError, FieldMismatch, MapMissing, UnknownModel,
                BadCharacteristic, NotFundamental, ExpressionError, PrimeNotInTable, NotFound,
                NonGenericStratum, DenominatorVanishes, ValueError, OSError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s")
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
