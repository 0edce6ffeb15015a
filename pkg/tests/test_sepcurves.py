import random

import pytest
from hypothesis import given, strategies as st

from fnc_forge.bipoly import BiPoly, bipoly_divides, division_outer, frobenius_form
from fnc_forge.errors import ConstantInput, LevelMismatch, NonUnitLeader, PreconditionFailed
from fnc_forge.field import build_tower, field_from_label
from fnc_forge.mvsp import is_mvsp, two_value_split, typeA_enumerate, values_of
from fnc_forge.poly import UniPoly, frobenius_poly, parse_poly
from fnc_forge.sepcurves import (
    FncReport,
    SepCurve,
    components_rational,
    fnc_all_components,
    fnc_cross_check,
    fnc_via_mills,
    fried_macrae_divides,
)

from oracles import g_adic_fnc

F3 = build_tower(3, 1, 1).top
F4 = build_tower(2, 1, 2).top
F5 = build_tower(5, 1, 1).top
F8 = build_tower(2, 1, 3).top
F9 = build_tower(3, 1, 2).top


def bipolys(F, deg=3, terms=5):
    key = st.tuples(st.integers(0, deg), st.integers(0, deg))
    return st.dictionaries(key, st.integers(1, F.order - 1), max_size=terms).map(lambda d: BiPoly(F, d))


def test_frobenius_form_examples():
    line = BiPoly.parse(F4, "x - y")
    assert frobenius_form(line) == BiPoly.parse(F4, "x^4 - x - y^4 + y")
    fermat = BiPoly.parse(F4, "x^3 + y^3 + 1")
    assert frobenius_form(fermat) == BiPoly.parse(F4, "x^6 + x^3 + y^6 + y^3")
    assert frobenius_form(BiPoly.parse(F3, "x^3 + y^6 + 1")).is_zero()


def test_bipoly_divides_examples():
    fermat = BiPoly.parse(F4, "x^3 + y^3 + 1")
    assert bipoly_divides(frobenius_form(fermat), fermat) == BiPoly.parse(F4, "x^3 + y^3")
    assert bipoly_divides(BiPoly.parse(F4, "x"), fermat) is None
    with pytest.raises(NonUnitLeader):
        bipoly_divides(fermat, BiPoly.parse(F4, "x*y + 1"))


@given(F=bipolys(F9), H=bipolys(F9))
def test_frobenius_form_leibniz(F, H):
    assert frobenius_form(F * H) == frobenius_form(F) * H + F * frobenius_form(H)


@given(F=bipolys(F8), H=bipolys(F8))
def test_frobenius_form_additive(F, H):
    assert frobenius_form(F + H) == frobenius_form(F) + frobenius_form(H)


@given(H=bipolys(F9), cs=st.lists(st.integers(0, 8), min_size=2, max_size=4))
def test_division_roundtrip(H, cs):
    g = UniPoly(F9, cs)
    if g.is_constant():
        return
    G = BiPoly.separated(parse_poly(F9, "x^2 + 1"), g)
    assert division_outer(G) == "y"
    assert bipoly_divides(G * H, G) == H


def test_sepcurve_invariants():
    with pytest.raises(ConstantInput):
        SepCurve(UniPoly(F3, [1]), parse_poly(F3, "x"))
    with pytest.raises(PreconditionFailed):
        SepCurve(parse_poly(F3, "x^3"), parse_poly(F3, "x^6 + 1"))
    with pytest.raises(LevelMismatch):
        SepCurve(parse_poly(F3, "x"), parse_poly(F9, "x"))


def test_fnc_examples():
    herm = SepCurve(parse_poly(F4, "x^2 + x"), parse_poly(F4, "x^3"))
    assert fnc_all_components(herm)
    f = parse_poly(F3, "x^4 - x^2")
    assert not fnc_all_components(SepCurve(f, f))
    lines = SepCurve(parse_poly(F3, "x^3 - x"), parse_poly(F3, "x^3 - x"))
    assert fnc_all_components(lines)
    Fxy = lines.bipoly()
    assert frobenius_form(Fxy) == -Fxy


def test_mills_route_examples():
    rep = fnc_via_mills(SepCurve(parse_poly(F4, "x^3"), -(parse_poly(F4, "x^3") + 1)))
    assert rep.mills_verdict and rep.detail["values_f"] == [0, 1]
    A = typeA_enumerate(F5)[0][2]
    B = UniPoly(F5, [1]) - typeA_enumerate(F5)[1][2]
    mixed = fnc_via_mills(SepCurve(A, B))
    assert mixed.route == "two_values" and mixed.mills_verdict is False
    X = frobenius_poly(F3)
    single = fnc_via_mills(SepCurve(X**1 * parse_poly(F3, "x + 1").frobenius(), X**4))
    assert single.route == "single_value" and single.mills_verdict
    assert single.detail["route_verdict"] is True


def test_report_roundtrip():
    rep = fnc_cross_check(SepCurve(parse_poly(F4, "x^2 + x"), parse_poly(F4, "x^3")))
    assert FncReport.from_dict(rep.to_dict()) == rep
    assert rep.method_agreement and rep.certificate == {"T": [0, 1, 1], "theta": 1}


def test_linear_curves():
    f = parse_poly(F5, "2*x + 1")
    rep = fnc_cross_check(SepCurve(f, f))
    assert rep.divisibility_verdict and rep.mills_verdict
    assert not rep.components_rational_caveat


def _rand_poly(rng, F, dmax):
    while True:
        f = UniPoly(F, [rng.randrange(F.order) for _ in range(rng.randint(2, dmax + 1))])
        if not f.is_constant():
            return f


def test_cross_check_random_f5():
    rng = random.Random(5)
    agree = checked = 0
    for _ in range(500):
        f, g = _rand_poly(rng, F5, 6), _rand_poly(rng, F5, 6)
        if f.derivative().is_zero() and g.derivative().is_zero():
            continue
        rep = fnc_cross_check(SepCurve(f, g))  # raises on a forbidden disagreement
        checked += 1
        if not rep.components_rational_caveat:
            assert rep.method_agreement
        agree += rep.method_agreement
    assert checked > 400


def test_cross_check_on_mvsp_pairs():
    pool = [h for _, _, h in typeA_enumerate(F5)]
    pool += [UniPoly(F5, [1]) - h for h in pool]
    pool += [parse_poly(F5, "x^5 - x + 1"), parse_poly(F5, "x^2"), parse_poly(F5, "x^4")]
    for f in pool:
        for g in pool:
            if f.derivative().is_zero() and g.derivative().is_zero():
                continue
            rep = fnc_cross_check(SepCurve(f, g))
            if rep.route == "two_values":
                assert rep.detail["route_verdict"] == rep.mills_verdict


@pytest.mark.parametrize("label", ["5^1:1", "3^1:2", "2^1:3"])
def test_divisibility_matches_univariate_oracle(label):
    F = field_from_label(label)
    rng = random.Random(len(label))
    pool = [_rand_poly(rng, F, 4) for _ in range(25)]
    pool += [two_value_split(F, [0, 1]), UniPoly.monomial(F, 3), UniPoly.monomial(F, F.order - 1)]
    for f in pool:
        for g in pool[:12]:
            if f.derivative().is_zero() and g.derivative().is_zero():
                continue
            c = SepCurve(f, g)
            assert fnc_all_components(c) == g_adic_fnc(f, g)


def test_symmetry_and_value_set_consequence():
    rng = random.Random(9)
    pool = [_rand_poly(rng, F9, 3) for _ in range(30)] + [UniPoly.monomial(F9, 4), UniPoly.monomial(F9, 4) + 1]
    for f in pool:
        for g in pool:
            if f.derivative().is_zero() and g.derivative().is_zero():
                continue
            v = fnc_all_components(SepCurve(f, g))
            assert v == fnc_all_components(SepCurve(g, f))
            if v:
                assert is_mvsp(f) and is_mvsp(g) and values_of(f) == values_of(g)


def test_fried_macrae_examples():
    x = parse_poly(F8, "x")
    assert fried_macrae_divides(parse_poly(F8, "x^2"), x, x)
    rng = random.Random(18)
    for _ in range(200):
        T, f, g = (_rand_poly(rng, F8, 3) for _ in range(3))
        assert fried_macrae_divides(T, f, g)
    assert fried_macrae_divides(x, parse_poly(F8, "x^3 + 1"), parse_poly(F8, "x^2"))


def test_components_rational_for_kummer():
    herm = SepCurve(parse_poly(F4, "x^2 + x"), parse_poly(F4, "x^3"))
    assert components_rational(herm)
    generic = SepCurve(parse_poly(F9, "x^4 + x"), parse_poly(F9, "x^3 + x^2"))
    assert not components_rational(generic)
