import random

import numpy as np
import pytest

from fnc_forge.bipoly import BiPoly
from fnc_forge.census import (
    ArcReport,
    CurveStats,
    arc_completeness,
    binomial_census,
    census_field,
    census_superelliptic,
    count_affine_and_infinity,
    count_points_projective,
    degree_law_check,
    exhaustive_size,
    fermat_rigidity,
    hv_value,
    hvh_check,
    projective_points,
    sv_bound,
)
from fnc_forge.errors import BadNu, PreconditionFailed, TooLarge
from fnc_forge.poly import UniPoly, parse_poly
from fnc_forge.sepcurves import SepCurve
from fnc_forge.superelliptic import ABS_IRREDUCIBLE, SuperCurve, garcia_test


def naive_count(B: BiPoly) -> int:
    """Projective points by scalar evaluation of the homogenisation."""
    E = B.field
    q = E.order
    d = B.total_degree

    def H(X, Y, Z):
        acc = 0
        for (i, j), c in B.terms.items():
            acc = E.add(acc, E.mul(c, E.mul(E.pow(X, i), E.mul(E.pow(Y, j), E.pow(Z, d - i - j)))))
        return acc

    pts = [(1, y, z) for y in range(q) for z in range(q)] + [(0, 1, z) for z in range(q)] + [(0, 0, 1)]
    return sum(H(*P) == 0 for P in pts)


CURVES = [
    ("2^1:2", "y^3 + x^3 + 1"),
    ("2^1:2", "y^3 + x^2 + x"),
    ("5", "y^2 - x^3 - 2*x - 1"),
    ("3^1:2", "x*y + y^4 + x^2 + 1"),
    ("7", "y^3 - x^3 - 1"),
    ("2^1:3", "x^7 + y^7 + 1"),
]


@pytest.mark.parametrize("label,text", CURVES)
def test_point_count_routes_agree(label, text):
    from fnc_forge.field import field_from_label

    B = BiPoly.parse(field_from_label(label), text)
    a, inf = count_affine_and_infinity(B)
    N = count_points_projective(B).N
    assert N == a + inf == naive_count(B) == len(projective_points(B))


def test_known_counts():
    F4 = census_field(4)
    assert count_points_projective(SuperCurve(3, parse_poly(F4, "x^3 + 1"))).N == 9
    F8 = census_field(8)
    nt = SepCurve(parse_poly(F8, "x^4 + x^2 + x"), parse_poly(F8, "y^7", "y"))
    assert count_points_projective(nt).N == 33
    st = count_points_projective(SuperCurve(3, parse_poly(F4, "x^2 + x")), nu=2)
    assert (st.N, st.genus, st.sv_bound_value, st.hv_value, st.smooth_plane) == (9, 1, 9, 9, True)
    assert CurveStats.from_dict(st.to_dict()) == st


def test_hermitian_over_f16_is_minimal():
    F4 = census_field(4)
    E = F4.extension(2)
    herm = SuperCurve(3, parse_poly(F4, "x^2 + x"))
    # Frobenius eigenvalue -2 over F_4 squares to 4 over F_16: 16 + 1 - 8
    assert count_points_projective(herm, over=E).N == 9
    assert count_affine_and_infinity(herm, over=E) == (8, 1)
    assert naive_count(SuperCurve(3, parse_poly(E, "x^2 + x")).bipoly()) == 9


def test_sv_bound_examples():
    assert sv_bound(3, 1, 4, 2) == 9
    assert sv_bound(62, 1830, 125, 1) == 5766
    assert sv_bound(4, 3, 9, 3) == (3 * 4 + 11 * 4) // 2
    with pytest.raises(BadNu):
        sv_bound(3, 1, 4, 3)
    with pytest.raises(BadNu):
        sv_bound(3, 1, 4, 0)
    with pytest.raises(ValueError):
        sv_bound(3, -1, 4, 1)
    assert hv_value(3, 4) == 9


def test_count_cap(monkeypatch):
    monkeypatch.setenv("FNC_FORGE_CAP", "100")
    F = census_field(16)
    with pytest.raises(TooLarge):
        count_points_projective(SuperCurve(3, parse_poly(F, "x^3 + 1")))


def test_hvh_check():
    F4 = census_field(4)
    rep = hvh_check(SuperCurve(3, parse_poly(F4, "x^3 + 1")))
    assert rep == {"N": 9, "bound": 9, "smooth_plane": True, "equality": True, "passed": True}
    F8 = census_field(8)
    rep = hvh_check(SuperCurve(7, parse_poly(F8, "x^4 + x^2 + x")))
    assert rep["passed"] and not rep["smooth_plane"] and rep["N"] > rep["bound"]
    with pytest.raises(PreconditionFailed):
        hvh_check(SuperCurve(3, parse_poly(F4, "x^3 + x + 1")))


# -- arcs ---------------------------------------------------------------------


def _brute_arc(points, d, E):
    q = E.order
    reps = [(1, y, z) for y in range(q) for z in range(q)] + [(0, 1, z) for z in range(q)] + [(0, 0, 1)]
    P = set(points)

    def on(L, X):
        return E.add(E.add(E.mul(L[0], X[0]), E.mul(L[1], X[1])), E.mul(L[2], X[2])) == 0

    counts = [sum(on(L, X) for X in P) for L in reps]
    is_arc = max(counts) <= d and d in counts
    addable = [X for X in reps if X not in P and all(c + on(L, X) <= d for L, c in zip(reps, counts))]
    return is_arc, is_arc and not addable, sum(counts)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_arc_matches_brute_force(q):
    E = census_field(q)
    rng = random.Random(q)
    reps = [(1, y, z) for y in range(q) for z in range(q)] + [(0, 1, z) for z in range(q)] + [(0, 0, 1)]
    for _ in range(25):
        pts = rng.sample(reps, rng.randint(1, len(reps) // 2))
        d = rng.randint(2, q + 1)
        rep = arc_completeness(pts, d, E)
        is_arc, complete, total = _brute_arc(pts, d, E)
        assert (rep.is_arc, rep.is_complete, rep.incidence_total) == (is_arc, complete, total)
        # each point lies on q + 1 lines
        assert rep.incidence_total == len(pts) * (q + 1)


def test_arc_edge_cases():
    E = census_field(4)
    empty = arc_completeness([], 2, E)
    assert not empty.is_arc and empty.incidence_total == 0
    line = [(1, y, 0) for y in range(4)] + [(0, 1, 0)]
    rep = arc_completeness(line, 5, E)
    assert rep.is_arc and rep.max_line == 5 and rep.witness is not None
    assert ArcReport.from_dict(rep.to_dict()) == rep
    # a hyperoval in PG(2,4) is a complete 2-arc
    conic = [(1, t, E.mul(t, t)) for t in range(4)] + [(0, 0, 1), (0, 1, 0)]
    hyp = arc_completeness(conic, 2, E)
    assert hyp.is_arc and hyp.is_complete
    with pytest.raises(ValueError):
        arc_completeness(line + line[:1], 5, E)


# -- censuses -----------------------------------------------------------------


HITS = {4: 26, 5: 35, 7: 84, 8: 310, 9: 225}


@pytest.mark.parametrize("q", sorted(HITS))
def test_census_counts_and_modes(q):
    ex = census_superelliptic(q, annotate=False)
    assert len(ex) == HITS[q]
    con = census_superelliptic(q, mode="constructive", annotate=False)
    key = lambda r: (r["n"], tuple(r["f"]))
    assert {key(r) for r in con} <= {key(r) for r in ex}
    assert {key(r) for r in con} == {key(r) for r in ex}


def test_census_exhaustive_against_scalar_scan():
    F = census_field(5)
    hits = set()
    for n in (1, 2, 4):
        for cs in np.ndindex(*([5] * (n + 1))):
            f = UniPoly(F, list(cs))
            if not f.is_constant() and garcia_test(SuperCurve(n, f)):
                hits.add((n, tuple(f.coeffs)))
    got = {(r["n"], tuple(r["f"])) for r in census_superelliptic(5, annotate=False)}
    assert got == hits


def test_census_records_and_parallel_determinism():
    a = census_superelliptic(7)
    b = census_superelliptic(7, jobs=2)
    assert a == b
    for r in a:
        assert r["corollary_passed"]
        if r["irreducible"] == ABS_IRREDUCIBLE:
            assert r["hvh_passed"]
    with pytest.raises(ValueError):
        census_superelliptic(7, mode="guess")
    assert exhaustive_size(9, 4)[1] <= 9**5


def test_census_field_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        census_field(12)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 16])
def test_fermat_rigidity(q):
    rep = fermat_rigidity(q)
    assert rep["passed"] and rep["hits"] > 0


def test_binomial_census_q4():
    hits = binomial_census(4)
    assert {(h["n"], h["d"]) for h in hits} == {(3, 3), (1, 1)}


def test_degree_law_small():
    r = degree_law_check(census_field(5), 3)
    assert not r["violations"] and r["fnc_pairs"] > 0


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_classical_smooth_curves_obey_nu_one_bound(q):
    F = census_field(q)
    rng = random.Random(q * 31)
    ns = [n for n in range(2, q) if (q - 1) % n == 0]
    seen = 0
    for _ in range(150):
        n = rng.choice(ns)
        f = UniPoly(F, [rng.randrange(q) for _ in range(n)] + [rng.randrange(1, q)])
        c = SuperCurve(n, f)
        if garcia_test(c):
            continue
        st = count_points_projective(c)
        if not st.smooth_plane or st.genus is None:
            continue
        seen += 1
        assert st.N <= sv_bound(st.d, st.genus, q, 1)
    assert seen > 20
