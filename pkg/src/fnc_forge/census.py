"""Point counts on plane projective closures, classical bounds, arcs, and
exhaustive or constructive searches for nonclassical superelliptic curves."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .bipoly import BiPoly
from .errors import BadNu, PreconditionFailed, TooLarge
from .field import GF, build_tower, is_prime, prime_factors
from .mvsp import typeA_enumerate, w_family, values_of
from .poly import UniPoly, interpolate
from .sepcurves import SepCurve
from .superelliptic import (
    ABS_IRREDUCIBLE,
    SuperCurve,
    corollary_checks,
    garcia_test,
    is_smooth_plane,
    kummer_genus,
    kummer_irreducible,
)

POINT_CAP = 1 << 22


def point_cap() -> int:
    env = os.environ.get("FNC_FORGE_CAP")
    return int(env) if env else POINT_CAP


# -- point counting ----------------------------------------------------------


def as_bipoly(curve) -> BiPoly:
    if isinstance(curve, BiPoly):
        return curve
    if isinstance(curve, (SuperCurve, SepCurve)):
        return curve.bipoly()
    raise TypeError(f"cannot read {type(curve).__name__} as a plane curve")


def _check_size(q: int):
    if q * q + q + 1 > point_cap():
        raise TooLarge(f"PG(2,{q}) has more than {point_cap()} points")


def _plane_reps(q: int):
    """Canonical representatives (1:y:z), (0:1:z), (0:0:1) as three arrays."""
    E = np.arange(q, dtype=np.int64)
    Y, Z = np.meshgrid(E, E, indexing="ij")
    X = np.concatenate([np.ones(q * q, np.int64), np.zeros(q + 1, np.int64)])
    Y = np.concatenate([Y.ravel(), np.ones(q, np.int64), [0]])
    Z = np.concatenate([Z.ravel(), E, [1]])
    return X, Y, Z


def projective_points(curve, over: GF | None = None) -> list[tuple[int, int, int]]:
    """Points of the projective closure over `over` (default: the curve's field)."""
    F = as_bipoly(curve)
    E = over or F.field
    _check_size(E.order)
    X, Y, Z = _plane_reps(E.order)
    vals = F.homogeneous_eval(X, Y, Z, over=E)
    idx = np.flatnonzero(vals == 0)
    return [(int(X[i]), int(Y[i]), int(Z[i])) for i in idx]


def count_affine_and_infinity(curve, over: GF | None = None) -> tuple[int, int]:
    """Affine zeros by a full grid scan, plus zeros of the top-degree form."""
    F = as_bipoly(curve)
    E = over or F.field
    q = E.order
    _check_size(q)
    A = np.arange(q, dtype=np.int64)
    X, Y = np.meshgrid(A, A, indexing="ij")
    acc = np.zeros(X.shape, dtype=np.int64)
    for (i, j), c in F.sorted_terms():
        acc = E.add_arr(acc, E.mul_arr(E.mul_arr(E.pow_arr(X, i), E.pow_arr(Y, j)), c))
    affine = int(np.count_nonzero(acc == 0))
    top = F.top_form()
    at_inf = int(top(0, 1) == 0)
    tv = np.zeros(q, dtype=np.int64)
    for (i, j), c in top.sorted_terms():
        tv = E.add_arr(tv, E.mul_arr(E.pow_arr(A, j), c))
    at_inf += int(np.count_nonzero(tv == 0))
    return affine, at_inf


def sv_bound(d: int, genus: int, q: int, nu: int) -> int:
    """Floor of (nu (2g - 2) + (q + 2) d) / 2."""
    p = prime_factors(q)[0]
    if nu < 1 or (nu != 1 and p ** round(math.log(nu, p)) != nu):
        raise BadNu(f"nu must be 1 or a power of {p}, got {nu}")
    if genus < 0:
        raise ValueError("genus must be non-negative")
    return (nu * (2 * genus - 2) + (q + 2) * d) // 2


def hv_value(d: int, q: int) -> int:
    return d * (q - d + 2)


@dataclass
class CurveStats:
    N: int
    d: int
    q: int
    field: str
    genus: int | None = None
    nu: int | None = None
    sv_bound_value: int | None = None
    hv_value: int = 0
    smooth_plane: bool | None = None

    def to_dict(self):
        return {
            "N": self.N,
            "d": self.d,
            "q": self.q,
            "field": self.field,
            "genus": self.genus,
            "nu": self.nu,
            "sv_bound_value": self.sv_bound_value,
            "hv_value": self.hv_value,
            "smooth_plane": self.smooth_plane,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def count_points_projective(curve, over: GF | None = None, nu: int | None = None, genus: int | None = None) -> CurveStats:
    F = as_bipoly(curve)
    E = over or F.field
    N = len(projective_points(F, E))
    d = F.total_degree
    smooth = None
    if isinstance(curve, SuperCurve):
        smooth = is_smooth_plane(curve.n, curve.f)
        if genus is None and curve.n % curve.field.p:
            try:
                genus = kummer_genus(curve).genus
            except PreconditionFailed:
                genus = None
    bound = sv_bound(d, genus, E.order, nu) if genus is not None and nu is not None else None
    return CurveStats(N, d, E.order, E.label, genus, nu, bound, hv_value(d, E.order), smooth)


def hvh_check(c: SuperCurve, over: GF | None = None) -> dict:
    """N >= n (q - n + 2), with equality exactly for nonsingular plane models."""
    if not garcia_test(c):
        raise PreconditionFailed("garcia_test does not hold")
    if kummer_irreducible(c) != ABS_IRREDUCIBLE:
        raise PreconditionFailed("curve not certified absolutely irreducible")
    E = over or c.field
    N = len(projective_points(c, E))
    bound = hv_value(c.n, E.order)
    smooth = is_smooth_plane(c.n, c.f)
    return {
        "N": N,
        "bound": bound,
        "smooth_plane": smooth,
        "equality": N == bound,
        "passed": N >= bound and (N == bound) == smooth,
    }


# -- arcs --------------------------------------------------------------------


@dataclass
class ArcReport:
    points: list
    d: int
    is_arc: bool
    is_complete: bool
    witness: tuple | None = None
    max_line: int = 0
    incidence_total: int = 0

    def to_dict(self):
        return {
            "points": [list(P) for P in self.points],
            "d": self.d,
            "is_arc": self.is_arc,
            "is_complete": self.is_complete,
            "witness": list(self.witness) if self.witness else None,
            "max_line": self.max_line,
            "incidence_total": self.incidence_total,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["points"] = [tuple(P) for P in d["points"]]
        d["witness"] = tuple(d["witness"]) if d["witness"] else None
        return cls(**d)


def _incidence(E: GF, L, P):
    """Boolean matrix lines x points of a X + b Y + c Z == 0."""
    t = E.mul_arr(L[:, 0][:, None], P[:, 0][None, :])
    t = E.add_arr(t, E.mul_arr(L[:, 1][:, None], P[:, 1][None, :]))
    t = E.add_arr(t, E.mul_arr(L[:, 2][:, None], P[:, 2][None, :]))
    return t == 0


def arc_completeness(points, d: int, E: GF) -> ArcReport:
    q = E.order
    n_plane = q * q + q + 1
    if n_plane * n_plane > point_cap():
        raise TooLarge(f"line scan over PG(2,{q}) exceeds the cap")
    X, Y, Z = _plane_reps(q)
    plane = np.stack([X, Y, Z], axis=1)
    index = {tuple(int(v) for v in row): i for i, row in enumerate(plane)}
    members = sorted({index[tuple(P)] for P in points})
    if len(members) != len(points):
        raise ValueError("points must be distinct canonical representatives")
    inc = _incidence(E, plane, plane)  # lines share the representative set
    counts = inc[:, members].sum(axis=1)
    is_arc = bool(len(members) and counts.max() <= d and np.any(counts == d))
    witness = None
    if is_arc:
        full = counts >= d
        outside = np.setdiff1d(np.arange(n_plane), members)
        blocked = inc[np.ix_(full, outside)].any(axis=0) if full.any() else np.zeros(len(outside), bool)
        free = outside[~blocked]
        if len(free):
            witness = tuple(int(v) for v in plane[free[0]])
            if np.any(counts[inc[:, free[0]]] + 1 > d):
                raise AssertionError("witness is not addable")
    return ArcReport(
        [tuple(P) for P in points],
        d,
        is_arc,
        is_arc and witness is None,
        witness,
        int(counts.max()) if len(counts) else 0,
        int(counts.sum()),
    )


# -- censuses ----------------------------------------------------------------


def census_field(q: int) -> GF:
    """F_q as the top of a tower over its prime field."""
    fs = prime_factors(q)
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fs[0]
    e = round(math.log(q, p))
    return build_tower(p, 1, e).top


def _good_values(F: GF, n: int) -> np.ndarray:
    m = (F.order - 1) // n
    E = F.elements()
    return np.concatenate([[0], E[1:][F.pow_arr(E[1:], m) == 1]])


def _eval_rows(F: GF, C: np.ndarray) -> np.ndarray:
    """Values of each coefficient row of C at every element, by Horner."""
    A = F.elements()
    acc = np.zeros((C.shape[0], F.order), dtype=np.int64)
    for i in range(C.shape[1] - 1, -1, -1):
        acc = F.add_arr(F.mul_arr(acc, A[None, :]), C[:, i][:, None])
    return acc


def _interp_rows(F: GF, V: np.ndarray) -> np.ndarray:
    q = F.order
    M = np.array([interpolate(F, [int(a == b) for b in range(q)]).to_list() + [0] * q for a in range(q)])[:, :q]
    out = np.zeros((V.shape[0], q), dtype=np.int64)
    for a in range(q):
        out = F.add_arr(out, F.mul_arr(V[:, a][:, None], M[a][None, :]))
    return out


def exhaustive_size(q: int, n: int) -> tuple[str, int]:
    m = (q - 1) // n
    by_coeffs = q ** (n + 1)
    by_values = (m + 1) ** q
    return ("coeffs", by_coeffs) if by_coeffs <= by_values else ("values", by_values)


def _candidates_exhaustive(F: GF, n: int) -> list[UniPoly]:
    q = F.order
    how, size = exhaustive_size(q, n)
    if size > point_cap():
        raise TooLarge(f"exhaustive search over F_{q} with n={n} needs {size} candidates")
    good = _good_values(F, n)
    out = []
    if how == "coeffs":
        rows = np.array(list(itertools.product(range(q), repeat=n + 1)), dtype=np.int64)[:, ::-1]
        rows = rows[np.any(rows[:, 1:] != 0, axis=1)]
        vals = _eval_rows(F, rows)
        keep = np.isin(vals, good).all(axis=1)
        rows = rows[keep]
    else:
        V = good[np.array(list(itertools.product(range(len(good)), repeat=q)), dtype=np.int64)]
        rows = _interp_rows(F, V)
        keep = ~np.any(rows[:, n + 1 :] != 0, axis=1) & np.any(rows[:, 1:] != 0, axis=1)
        rows = rows[keep]
    for r in rows:
        out.append(UniPoly(F, [int(c) for c in r]))
    return out


def _affine_orbit(f: UniPoly) -> list[UniPoly]:
    F = f.field
    return [f.compose(UniPoly(F, [b, a])) for a in range(1, F.order) for b in range(F.order)]


def _constructive_seeds(F: GF) -> list[UniPoly]:
    seeds = []
    q = F.order
    for a in range(1, q):
        for b in range(q):
            for d in range(1, q):
                seeds.append(UniPoly(F, [b] + [0] * (d - 1) + [a]))
    tower_k = F.degree if F.role == "top" else 1
    if tower_k > 1 and q <= 16:
        seeds.extend(w_family(F))
    if F.p > 2 and q <= 9:
        for _, _, h in typeA_enumerate(F):
            seeds.append(h)
            seeds.append(UniPoly(F, [1]) - h)
    return seeds


def _candidates_constructive(F: GF, n: int, seeds) -> list[UniPoly]:
    seen = set()
    out = []
    for s in seeds:
        if s.is_constant() or s.deg > n:
            continue
        for g in _affine_orbit(s):
            key = tuple(g.coeffs)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def census_record(c: SuperCurve) -> dict:
    F = c.field
    irr = kummer_irreducible(c)
    stats = count_points_projective(c)
    rec = {
        "field": F.label,
        "q": F.order,
        "n": c.n,
        "f": c.f.to_list(),
        "N": stats.N,
        "d": stats.d,
        "genus": stats.genus,
        "smooth_plane": stats.smooth_plane,
        "hv_value": hv_value(c.n, F.order),
        "irreducible": irr,
        "corollary_passed": corollary_checks(c)["passed"],
    }
    if irr == ABS_IRREDUCIBLE:
        rec["hvh_passed"] = hvh_check(c)["passed"]
    if stats.genus is not None:
        rec["sv_nu1"] = sv_bound(stats.d, stats.genus, F.order, 1)
    return rec


def _census_one(args):
    q, n, mode, annotate = args
    F = census_field(q)
    if mode == "exhaustive":
        cands = _candidates_exhaustive(F, n)
    else:
        cands = _candidates_constructive(F, n, _constructive_seeds(F))
    hits = [f for f in cands if garcia_test(SuperCurve(n, f))]
    hits.sort(key=lambda f: (f.deg, f.coeffs[::-1]))
    if annotate:
        return [census_record(SuperCurve(n, f)) for f in hits]
    return [{"field": F.label, "q": q, "n": n, "f": f.to_list()} for f in hits]


def census_superelliptic(q: int, mode: str = "exhaustive", ns=None, annotate: bool = True, jobs: int = 1) -> list[dict]:
    """Every (n, f) with y^n = f(x) nonclassical, in deterministic order."""
    if mode not in ("exhaustive", "constructive"):
        raise ValueError(f"unknown census mode {mode!r}")
    ns = sorted(ns or [n for n in range(1, q) if (q - 1) % n == 0])
    tasks = [(q, n, mode, annotate) for n in ns]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_census_one, tasks))
    else:
        parts = [_census_one(t) for t in tasks]
    return [r for part in parts for r in part]


def in_subfield(F: GF, a: int, qs: int) -> bool:
    return F.pow(a, qs) == a


def binomial_census(q: int) -> list[dict]:
    """All y^n = a x^d + b (a, b nonzero, 1 <= d <= n, n | q-1) that are nonclassical."""
    F = census_field(q)
    out = []
    for n in range(1, q):
        if (q - 1) % n:
            continue
        for d in range(1, n + 1):
            for a in range(1, q):
                for b in range(1, q):
                    f = UniPoly(F, [b] + [0] * (d - 1) + [a])
                    if garcia_test(SuperCurve(n, f)):
                        out.append({"n": n, "d": d, "a": a, "b": b})
    return out


def subfield_orders(q: int) -> list[int]:
    p = prime_factors(q)[0]
    e = round(math.log(q, p))
    return [p**j for j in range(1, e + 1) if e % j == 0]


def fermat_rigidity(q: int) -> dict:
    """Check that every binomial hit is a Fermat curve over some subfield."""
    F = census_field(q)
    hits = binomial_census(q)
    bad = []
    for h in hits:
        ok = any(
            h["n"] == h["d"] == (q - 1) // (qs - 1) and in_subfield(F, h["a"], qs) and in_subfield(F, h["b"], qs)
            for qs in subfield_orders(q)
        )
        if not ok:
            bad.append(h)
    return {"q": q, "hits": len(hits), "violations": bad, "passed": not bad}


def degree_law_check(F: GF, max_deg: int) -> dict:
    """Nonclassical f(x) = g(y) with both degrees <= max_deg must contain a line.

    Candidates are grouped by value set first, since equal value sets are
    necessary for nonclassicality.  The pair (lam f + mu, lam g + mu) is the
    same curve as (f, g), so f is taken monic with f(0) = 0.
    """
    from .sepcurves import fnc_all_components
    from .mvsp import affine_equivalent

    q = F.order
    rows = np.array(list(itertools.product(range(q), repeat=max_deg + 1)), dtype=np.int64)[:, ::-1]
    rows = rows[np.any(rows[:, 1:] != 0, axis=1)]
    vals = _eval_rows(F, rows)
    groups: dict = {}
    for r, v in zip(rows, vals):
        V = tuple(sorted(set(int(t) for t in v)))
        groups.setdefault(V, []).append(UniPoly(F, [int(c) for c in r]))
    checked = fnc = 0
    violations = []
    for V, polys in sorted(groups.items()):
        mv = [f for f in polys if len(V) == (q - 1) // f.deg + 1]
        for f in mv:
            if f.lc != 1 or f.coeff(0):
                continue
            for g in mv:
                if f.derivative().is_zero() and g.derivative().is_zero():
                    continue
                checked += 1
                if fnc_all_components(SepCurve(f, g)):
                    fnc += 1
                    if affine_equivalent(g, f) is None:
                        violations.append((f.to_list(), g.to_list()))
    return {"field": F.label, "pairs_checked": checked, "fnc_pairs": fnc, "violations": violations, "passed": not violations}
