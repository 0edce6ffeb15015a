import itertools

import pytest
from hypothesis import given, strategies as st

from fnc_forge.errors import BothZero, DivisionByZero, ParseError
from fnc_forge.field import build_tower, field_from_label
from fnc_forge.poly import (
    RootProfile,
    UniPoly,
    ValueSetReport,
    distinct_root_count,
    gcd,
    interpolate,
    lth_power_test,
    parse_poly,
    pth_power_root,
    rational_root_split,
    root_multiplicities,
    squarefree_decomposition,
    value_set,
)

from oracles import eval_naive

F2 = build_tower(2, 1, 1).top
F3 = build_tower(3, 1, 1).top
F4 = build_tower(2, 1, 2).top
F9 = build_tower(3, 1, 2).top
F25 = build_tower(5, 1, 2).top


def polys(F, max_deg=6):
    return st.lists(st.integers(0, F.order - 1), min_size=0, max_size=max_deg + 1).map(lambda cs: UniPoly(F, cs))


@pytest.mark.parametrize("label", ["3^1:2", "2^1:3", "5^1:1"])
@given(data=st.data())
def test_ring_identities(label, data):
    F = field_from_label(label)
    a, b, c = (data.draw(polys(F)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if not b.is_zero():
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.deg < b.deg


@given(a=polys(F9, 5), b=polys(F9, 5))
def test_derivative_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(a=polys(F4, 4), b=polys(F4, 4))
def test_gcd_divides_both(a, b):
    if a.is_zero() and b.is_zero():
        with pytest.raises(BothZero):
            gcd(a, b)
        return
    g = gcd(a, b)
    assert g.is_monic()
    assert g.divides(a) and g.divides(b)


def test_gcd_example():
    f = parse_poly(F3, "x^4 - x^2")
    g = parse_poly(F3, "x^3 - x")
    assert gcd(f, g) == parse_poly(F3, "x^3 + 2*x")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        divmod(UniPoly.x(F3), UniPoly.zero(F3))


def test_compose_and_frobenius():
    f = parse_poly(F4, "x^2 + x")
    assert f.compose(parse_poly(F4, "x^2")) == parse_poly(F4, "x^4 + x^2")
    assert f.frobenius() == parse_poly(F4, "x^4 + x^2")


@given(f=polys(F9, 6), data=st.data())
def test_evaluation_against_naive(f, data):
    a = data.draw(st.integers(0, 8))
    assert f(a) == eval_naive(F9, f.coeffs, a)


def test_value_set_examples():
    rep = value_set(parse_poly(F3, "x^4 - x^2"))
    assert rep.values == [0] and rep.size == 1
    rep = value_set(parse_poly(F4, "x^3"))
    assert rep.values == [0, 1] and rep.is_mvsp and rep.values_in_base
    assert ValueSetReport.from_dict(rep.to_dict()) == rep


def test_value_set_is_brute_force_image():
    for cs in itertools.product(range(4), repeat=3):
        f = UniPoly(F4, list(cs) + [1])
        assert value_set(f).values == sorted({eval_naive(F4, f.coeffs, a) for a in range(4)})


def test_pth_power_root():
    f = parse_poly(F9, "x^6 + 2*x^3 + 1")
    r = pth_power_root(f)
    assert r ** 3 == f
    assert pth_power_root(parse_poly(F9, "x^2")) is None


@given(f=polys(F9, 8))
def test_squarefree_decomposition_reassembles(f):
    if f.is_zero() or f.is_constant():
        return
    acc = UniPoly(F9, [f.lc])
    for g, m in squarefree_decomposition(f):
        assert gcd(g, g.derivative()).is_constant()
        acc = acc * g**m
    assert acc == f


def test_root_profile_char_two_example():
    f = parse_poly(F2, "(x^2 - x)*(x^2 + x + 1)^2")
    prof = root_multiplicities(f)
    assert sorted(prof.multiplicities()) == [1, 1, 2, 2]
    assert sum(e[3] for e in prof.entries) == 2
    assert prof.reconstruct() == f
    assert RootProfile.from_dict(prof.to_dict()).reconstruct() == f


@given(cs=st.lists(st.integers(0, 4), min_size=2, max_size=7))
def test_root_profile_matches_squarefree_route(cs):
    f = UniPoly(field_from_label("5^1:1"), cs)
    if f.is_constant():
        return
    prof = root_multiplicities(f, 6)
    split = rational_root_split(f)
    rat = sorted(m for m, r, _ in split for _ in range(r))
    assert sorted(e[2] for e in prof.entries if e[3]) == rat
    assert prof.degree() == f.deg
    assert prof.reconstruct() == f


def test_distinct_root_count():
    X = parse_poly(F9, "x^9 - x")
    assert distinct_root_count(X) == 9
    assert distinct_root_count(parse_poly(F9, "x^2 + 1"), F9) == 2


def test_lth_power_test():
    h = parse_poly(F25, "x + 3")
    c4 = F25.pow(7, 4)
    c, r = lth_power_test((h**4).scale(c4), 4)
    assert r == h and c == c4
    assert lth_power_test(parse_poly(F25, "x^4 + 1"), 2) is None


def test_interpolation_roundtrip():
    for F in (F4, F9):
        vals = [(3 * a + 1) % F.order for a in range(F.order)]
        f = interpolate(F, vals)
        assert f.deg < F.order
        assert [f(a) for a in range(F.order)] == vals


def test_parser_shapes():
    F = build_tower(5, 3, 1).top
    f = parse_poly(F, "x^62+(x+1)^62+1")
    assert f.deg == 62 and f.lc == 2
    assert parse_poly(F4, "[1, 0, 1]") == parse_poly(F4, "x^2 + 1")
    assert parse_poly(F4, "2x") == UniPoly(F4, [0, 2])
    assert parse_poly(F4, "g^1*x") == UniPoly(F4, [0, F4.generator])
    with pytest.raises(ParseError):
        parse_poly(F4, "x^")
    with pytest.raises(ParseError):
        parse_poly(F4, "x + y")


def test_dict_roundtrip():
    f = parse_poly(F9, "x^5 + 4*x + 7")
    assert UniPoly.from_dict(f.to_dict()) == f
