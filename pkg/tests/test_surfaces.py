import json
import random
from fractions import Fraction

import pytest

from goodred import poly
from goodred.counting import frobenius_charpoly
from goodred.curve import IgusaClebsch, embedded_curve, ic_weighted_equal, igusa_clebsch, reduce_mod
from goodred.finitefield import fq_new
from goodred.qfield import is_square_in_F, primes_above, qf_new
from goodred.sextic import covariants, transvectant
from goodred.surfaces import (
    DEFAULT_SIEVE, BadCharacteristic, BiPoly, DenominatorVanishes, MapMissing, NonGenericStratum, NotFound,
    SurfaceModel, UnknownModel, auto_sieve_moduli, conic_matrix, cubic_coefficients, enumerate_points,
    eval_cover, exhaustive_reconstruct, field_box, ic_at, is_candidate_point, load_model, mestre_reconstruct,
    rationals, registry_get,
)

from .conftest import random_curve

K53, K193 = qf_new(53), qf_new(193)
R53, S53 = K53(-24, -10, 121), K53(136, -24, 121)
IC53 = (K53(208, 88), K53(-1660, -588), K53(-428792, -135456), K53(643072, 204800))
M8, M17 = registry_get(8), registry_get(17)


class Rationals:
    """Just enough of a field interface to evaluate the tables over Q."""

    zero, one = Fraction(0), Fraction(1)

    def __call__(self, x):
        return Fraction(x)


# --- models ---

def test_model_8_cover():
    assert eval_cover(M8, 0, 0) == 4
    terms = M8.cover.terms
    assert terms[(1, 2)] == 32 and terms[(2, 1)] == 64 and terms[(3, 0)] == 32
    assert terms[(0, 1)] == -2 and terms[(0, 0)] == 4


def test_model_17_cover():
    assert M17.cover.terms[(0, 3)] == -256
    assert M17.icmap is None
    assert eval_cover(M17, 0, Fraction(-1, 4)) == Fraction(193, 16)


def test_unknown_model_and_overrides():
    with pytest.raises(UnknownModel):
        registry_get(5)
    r, s = BiPoly.gens()
    mine = SurfaceModel(5, r * r + s + 1, None, "test")
    assert registry_get(5, extra=[mine]) is mine


def test_model_documents_round_trip(tmp_path):
    for m in (M8, M17):
        doc = m.to_dict()
        again = load_model(json.dumps(doc))
        assert again.to_dict() == doc
        path = tmp_path / f"m{m.coeffD}.json"
        path.write_text(json.dumps(doc))
        assert load_model(str(path)).cover == m.cover
    with pytest.raises(ValueError):
        load_model({"coeffD": 8})
    with pytest.raises(ValueError):
        load_model({"coeffD": 8, "cover": []})


def test_bipoly_arithmetic():
    r, s = BiPoly.gens()
    f = (r + 2 * s) ** 2 - r * r
    assert f == 4 * r * s + 4 * s * s
    assert f(Fraction(1, 2), 3) == 6 + 36
    assert (f / 4)(1, 1) == 2
    assert BiPoly.from_monomials(f.monomials()) == f


# --- candidates and enumeration ---

def test_known_point_cover_value_is_square():
    v = eval_cover(M8, R53, S53)
    assert is_square_in_F(v) is not None
    c = is_candidate_point(M8, 53, R53, S53)
    assert c is not None and c.root * c.root == v


def test_candidate_examples():
    c = is_candidate_point(M17, 193, 0, Fraction(-1, 4))
    assert c.square_class == "D" and c.root in (Fraction(1, 4), Fraction(-1, 4))
    assert c.cover_value == 193 * Fraction(1, 4) ** 2
    assert is_candidate_point(M17, 53, 0, Fraction(-1, 4)) is None
    # on the branch locus: the (r + 1)^4 factor kills f(-1, 0)
    assert eval_cover(M17, -1, 0) == 0
    assert is_candidate_point(M17, 193, -1, 0) is None


def test_rationals():
    assert rationals(1) == [-1, 0, 1]
    assert set(rationals(2)) == {0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)}
    for H in (3, 5, 8):
        brute = {Fraction(a, b) for b in range(1, H + 1) for a in range(-H, H + 1)}
        assert set(rationals(H)) == brute and len(rationals(H)) == len(brute)


def test_field_box_order():
    box = field_box(53, 1, 121)
    assert len(box) == 9 and box[0] == K53(-1, -1, 121) and box[1] == K53(-1, 0, 121)


def test_auto_sieve_moduli():
    extra = auto_sieve_moduli(193)[len(DEFAULT_SIEVE):]
    assert extra and all(pow(193, (p - 1) // 2, p) == 1 for p in extra)
    assert auto_sieve_moduli(193)[:len(DEFAULT_SIEVE)] == DEFAULT_SIEVE


def naive_candidates(m, baseD, H):
    vals = rationals(H)
    out = []
    for r in vals:
        for s in vals:
            c = is_candidate_point(m, baseD, r, s)
            if c is not None:
                out.append((c.r, c.s))
    return out


@pytest.mark.parametrize("model,baseD", [(17, 193), (8, 53), (8, 193), (17, 53)])
def test_enumeration_matches_naive_filter(model, baseD):
    m = registry_get(model)
    assert [(c.r, c.s) for c in enumerate_points(m, baseD, 8)] == naive_candidates(m, baseD, 8)


@pytest.mark.parametrize("model,baseD", [(17, 193), (8, 53), (17, 53)])
def test_sieve_soundness(model, baseD):
    m = registry_get(model)
    for H in (4, 16):
        streams = [[(c.r, c.s) for c in enumerate_points(m, baseD, H, sieve_moduli=moduli)]
                   for moduli in ("auto", DEFAULT_SIEVE, ())]
        assert streams[0] == streams[1] == streams[2]


def test_field_enumeration_matches_candidate_filter():
    pts = list(enumerate_points(M8, 53, box=(3, 7)))
    vals = field_box(53, 3, 7)
    assert [(c.r, c.s) for c in pts] == [
        (r, s) for r in vals for s in vals if is_candidate_point(M8, 53, r, s) is not None]


# --- invariants on the surface ---

def test_ic_at_known_point():
    assert ic_weighted_equal(ic_at(M8, R53, S53), IC53)


def test_ic_at_errors():
    with pytest.raises(DenominatorVanishes):
        ic_at(M8, 0, 1)
    with pytest.raises(DenominatorVanishes):
        ic_at(M8, 1, 0)
    with pytest.raises(MapMissing):
        ic_at(M17, 0, Fraction(-1, 4))


# --- Mestre ---

def test_tables_rederived_from_transvectants():
    rng = random.Random(11)
    QQ = Rationals()
    for _ in range(4):
        f = [Fraction(rng.randint(-9, 9)) for _ in range(6)] + [Fraction(rng.randint(1, 4))]
        U = covariants(f)
        ys = (U["y1"], U["y2"], U["y3"])
        ABCD = (U["A"], U["B"], U["C"], U["D"])
        L = conic_matrix(ABCD, QQ)
        for i in range(3):
            for j in range(3):
                assert L[i][j] == transvectant(ys[i], 2, ys[j], 2, 2)[0]
        for (i, j, k), v in cubic_coefficients(ABCD, QQ).items():
            cube = poly.mul(poly.mul(ys[i], ys[j]), ys[k])
            assert v == transvectant(f, 6, cube, 6, 6)[0]


@pytest.mark.parametrize("p", [7, 11, 13])
def test_mestre_round_trip(p):
    F = fq_new(p)
    rng = random.Random(p)
    done = skipped = 0
    while done < 50:
        C = random_curve(F, rng)
        ic = igusa_clebsch(C)
        try:
            D = mestre_reconstruct(ic)
        except NonGenericStratum:
            skipped += 1
            continue
        assert ic_weighted_equal(igusa_clebsch(D), ic)
        assert frobenius_charpoly(D) in (frobenius_charpoly(C), frobenius_charpoly(C).twisted())
        done += 1
    assert skipped < 25


def test_mestre_on_c193_reduction():
    P = next(P for P in primes_above(K193, 7))
    ic = tuple(igusa_clebsch(reduce_mod(embedded_curve("193/17"), P)))
    D = mestre_reconstruct(ic)
    assert ic_weighted_equal(igusa_clebsch(D), ic)


def test_mestre_rejects():
    F3 = fq_new(3)
    with pytest.raises(BadCharacteristic):
        mestre_reconstruct([F3(1), F3(1), F3(1), F3(1)])
    F7 = fq_new(7)
    with pytest.raises(NonGenericStratum):
        mestre_reconstruct([F7(1), F7(2), F7(3), F7(0)])


def test_exhaustive_reconstruct_examples():
    F = fq_new(7)
    rng = random.Random(70)
    for _ in range(5):
        C = random_curve(F, rng)
        D = exhaustive_reconstruct(igusa_clebsch(C))
        assert ic_weighted_equal(igusa_clebsch(D), igusa_clebsch(C))
        assert frobenius_charpoly(D) in (frobenius_charpoly(C), frobenius_charpoly(C).twisted())
    with pytest.raises(NotFound):
        exhaustive_reconstruct([F(1), F(2), F(3), F(0)])
    with pytest.raises(ValueError):
        exhaustive_reconstruct([fq_new(11)(1)] * 4)


def test_icmap_reduction_compatible_with_mestre():
    """IC from the map at rational (r, s), reduced mod p, matches the rebuilt curve's IC."""
    rng = random.Random(8)
    checked = 0
    vals = [v for v in rationals(6) if v]
    while checked < 20:
        r, s = rng.choice(vals), rng.choice(vals)
        ic = ic_at(M8, r, s)
        p = rng.choice([7, 11, 13, 17, 19, 23])
        if any(Fraction(x).denominator % p == 0 for x in ic):
            continue
        F = fq_new(p)
        red = [F(Fraction(x).numerator) / F(Fraction(x).denominator) for x in ic]
        if not red[3]:
            continue
        try:
            D = mestre_reconstruct(red)
        except NonGenericStratum:
            continue
        assert ic_weighted_equal(igusa_clebsch(D), red)
        checked += 1


def test_ic_scaling_helper():
    ic = IgusaClebsch(40, -56, -669, -4)
    assert ic_weighted_equal(ic.scaled(3), ic)
