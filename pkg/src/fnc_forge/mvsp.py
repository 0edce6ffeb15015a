"""Minimal value set polynomials.

Throughout, the "working field" of a polynomial is the field its
coefficients live in, and value sets are taken over that field.  For the W
family (value set equal to the subfield directly below) the polynomial must
live in a field that has a base subfield, i.e. the top level of a tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels as K
from .errors import (
    BadSubset,
    BadValueSet,
    ConstantInput,
    NoDecomposition,
    NotMVSP,
    TooFewValues,
)
from .field import GF, FieldTower, field_from_label
from .poly import (
    UniPoly,
    frobenius_poly,
    pth_power_root,
    rational_root_split,
    value_array,
    value_set,
)


def _require_nonconstant(f: UniPoly):
    if f.is_constant():
        raise ConstantInput("polynomial must be nonconstant")


def values_of(f: UniPoly) -> list[int]:
    return [int(v) for v in np.unique(value_array(f))]


def mvsp_lower_bound(q: int, d: int) -> int:
    return (q - 1) // d + 1


def is_mvsp(f: UniPoly) -> bool:
    _require_nonconstant(f)
    return len(values_of(f)) == mvsp_lower_bound(f.field.order, f.deg)


def rational_part(h: UniPoly) -> UniPoly:
    """gcd(h, x^|F| - x), computed without forming x^|F| - x."""
    F = h.field
    hc = list(h.coeffs)
    if len(hc) <= 1:
        return UniPoly(F, [1]) if hc else frobenius_poly(F)
    xq = K.ppowmod(F, [0, 1], F.order, hc)
    return UniPoly(F, K.pgcd(F, hc, K.psub(F, xq, [0, 1])))


# -- Mills criterion ------------------------------------------------------------


@dataclass
class MillsCertificate:
    field: str
    values: list
    T: list | None
    theta: int | None
    holds: bool

    def to_dict(self):
        return {
            "field": self.field,
            "values": list(self.values),
            "T": self.T,
            "theta": self.theta,
            "holds": self.holds,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["field"], d["values"], d["T"], d["theta"], d["holds"])


def frobenius_identity_theta(T: UniPoly, f: UniPoly):
    """The unique theta with T(f) = theta (x^q - x) f', or None."""
    F = f.field
    df = f.derivative()
    if df.is_zero():
        return None
    lhs = T.compose(f)
    rhs = frobenius_poly(F) * df
    if lhs.deg != rhs.deg:
        return None
    theta = F.div(lhs.lc, rhs.lc)
    if lhs == rhs.scale(theta):
        return theta
    return None


def mills_criterion(f: UniPoly) -> MillsCertificate:
    """Check T(f) = theta (x^q - x) f' with T the monic polynomial vanishing on V_f."""
    _require_nonconstant(f)
    F = f.field
    vals = values_of(f)
    T = UniPoly.from_roots(F, vals)
    theta = frobenius_identity_theta(T, f)
    return MillsCertificate(F.label, vals, T.to_list(), theta, theta is not None)


# -- structure theorem ------------------------------------------------------


@dataclass
class MillsStructure:
    field: str
    gamma: list
    L: list
    l: list
    v: int
    m: int
    kk: int
    Npoly: list
    omega: list
    verified: int
    candidates: list = dc_field(default_factory=list)

    FULL = 0b1111

    @property
    def fully_verified(self) -> bool:
        return self.verified == self.FULL

    def to_dict(self):
        return {
            "field": self.field,
            "gamma": list(self.gamma),
            "L": [list(x) for x in self.L],
            "l": list(self.l),
            "v": self.v,
            "m": self.m,
            "kk": self.kk,
            "Npoly": list(self.Npoly),
            "omega": list(self.omega),
            "verified": self.verified,
            "candidates": [list(c) for c in self.candidates],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["field"], d["gamma"], d["L"], d["l"], d["v"], d["m"], d["kk"],
            d["Npoly"], d["omega"], d["verified"], [tuple(c) for c in d["candidates"]],
        )


def _root_power(h: UniPoly, e: int):
    """h^(1/p^e) or None."""
    for _ in range(e):
        h = pth_power_root(h)
        if h is None:
            return None
    return h


def structure_candidates(p: int, r: int, deg_f: int):
    """(v, m, kk) with 1 + v r = p^(m kk) and v | p^kk - 1, in increasing p^(m kk).

    gcd(F - gamma_0, x^q - x) has degree at least one, so v <= deg F and
    p^(m kk) = 1 + v r never exceeds 1 + r deg F.
    """
    out = []
    e = 1
    while p**e <= 1 + r * deg_f:
        if (p**e - 1) % r == 0:
            v = (p**e - 1) // r
            for kk in range(1, e + 1):
                if e % kk == 0 and (p**kk - 1) % v == 0:
                    out.append((v, e // kk, kk))
        e += 1
    return out


def _gamma_order(f: UniPoly, vals):
    Ls = {g: rational_part(f - UniPoly.const(f.field, g)) for g in vals}
    order = sorted(vals, key=lambda g: (Ls[g].deg, g))
    return order, Ls


def _check_structure(f: UniPoly, gamma, L0: UniPoly, v, m, kk):
    F = f.field
    p = F.p
    e = m * kk
    pe = p**e
    r = len(gamma) - 1
    bits = 0
    g0 = gamma[0]
    N = None
    rest, rem = divmod(f - UniPoly.const(F, g0), L0**v)
    if rem.is_zero():
        N = _root_power(rest, e)
    # (c): the shifted value polynomial is supported on (p^(kk i) - 1)/v
    P = UniPoly(F, [1])
    for g in gamma[1:]:
        P = P * UniPoly(F, [F.add(F.neg(g), g0), 1])
    exps = [(p ** (kk * i) - 1) // v for i in range(m + 1)]
    omega = [P.coeff(x) for x in exps]
    support_ok = all(c == 0 or i in exps for i, c in enumerate(P.coeffs))
    if support_ok and omega[0] != 0 and omega[-1] == 1 and P.deg == exps[-1]:
        bits |= 4
    dL0 = L0.derivative()
    a_ok = (1 + v * r == pe) and ((p**kk - 1) % v == 0) and _root_power(dL0, e) is not None
    if N is not None:
        if not L0.divides(N):
            if a_ok:
                bits |= 1
        if L0**v * N**pe + UniPoly.const(F, g0) == f:
            bits |= 2
        if bits & 4:
            lhs = UniPoly.zero(F)
            for i in range(m + 1):
                pk = p ** (kk * i)
                lhs = lhs + (L0**pk * N ** (pe * (pk - 1) // v)).scale(omega[i])
            rhs = (frobenius_poly(F) * dL0).scale(F.neg(omega[0]))
            if lhs == rhs:
                bits |= 8
    return bits, N, omega


def mills_structure(f: UniPoly) -> MillsStructure:
    """Decompose an MVSP with at least three values as L_0^v N^(p^(m kk)) + gamma_0."""
    _require_nonconstant(f)
    F = f.field
    vals = values_of(f)
    if len(vals) != mvsp_lower_bound(F.order, f.deg):
        raise NotMVSP("polynomial is not a minimal value set polynomial")
    r = len(vals) - 1
    if r <= 1:
        raise TooFewValues("structure theorem needs at least three values")
    gamma, Ls = _gamma_order(f, vals)
    L0 = Ls[gamma[0]]
    cands = structure_candidates(F.p, r, f.deg)
    best = None
    for v, m, kk in cands:
        bits, N, omega = _check_structure(f, gamma, L0, v, m, kk)
        rec = (bits, v, m, kk, N, omega)
        if best is None or bin(bits).count("1") > bin(best[0]).count("1"):
            best = rec
        if bits == MillsStructure.FULL:
            break
    if best is None:
        raise NoDecomposition(f"no exponent pattern 1 + v*{r} = p^e fits degree {f.deg}")
    bits, v, m, kk, N, omega = best
    return MillsStructure(
        F.label,
        gamma,
        [Ls[g].to_list() for g in gamma],
        [Ls[g].deg for g in gamma],
        v,
        m,
        kk,
        N.to_list() if N is not None else [],
        omega,
        bits,
        cands,
    )


def lemma_multiplicity_report(f: UniPoly) -> dict:
    """Root-multiplicity consequences of a Mills certificate, each checked.

    Non-rational roots of f - gamma must have multiplicity divisible by p;
    a rational root of multiplicity k needs T'(gamma) = -theta k; with three
    or more values the fibres other than the minimal one have rational
    multiplicities = 1 mod p and theta = -T'(gamma).
    """
    cert = mills_criterion(f)
    if not cert.holds:
        raise NotMVSP("the Mills identity does not hold for this polynomial")
    F = f.field
    p = F.p
    theta = cert.theta
    T = UniPoly(F, cert.T)
    dT = T.derivative()
    gamma, _ = _gamma_order(f, cert.values)
    r = len(gamma) - 1
    checks = []
    for idx, g in enumerate(gamma):
        tg = dT(g)
        for mult, nrat, nnon in rational_root_split(f - UniPoly.const(F, g)):
            if nnon:
                checks.append({
                    "gamma": g, "kind": "nonrational_divisible_by_p", "multiplicity": mult,
                    "passed": mult % p == 0,
                })
            if nrat:
                checks.append({
                    "gamma": g, "kind": "rational_derivative_relation", "multiplicity": mult,
                    "passed": tg == F.neg(F.mul(theta, mult % p)),
                })
                if r > 1 and idx > 0:
                    checks.append({
                        "gamma": g, "kind": "rational_one_mod_p", "multiplicity": mult,
                        "passed": mult % p == 1,
                    })
        if r > 1 and idx > 0:
            checks.append({
                "gamma": g, "kind": "theta_from_derivative", "multiplicity": None,
                "passed": theta == F.neg(tg),
            })
    return {
        "field": F.label,
        "theta": theta,
        "gamma": gamma,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


# -- the W family -------------------------------------------------------------


def _reduce_mod_frobenius(e: int, Q: int) -> int:
    """Exponent of x^e modulo x^Q - x."""
    return e if e < Q else (e - 1) % (Q - 1) + 1


def trace_monomial(F: GF, c: int, e: int) -> UniPoly:
    """sum_i (c x^e)^(q^i) reduced modulo x^Q - x, q the base order."""
    q = F.base.order
    Q = F.order
    k = F.degree
    coeffs: dict[int, int] = {}
    for i in range(k):
        qi = q**i
        ex = _reduce_mod_frobenius(e * qi, Q) if e else 0
        coeffs[ex] = F.add(coeffs.get(ex, 0), F.pow(c, qi))
    out = [0] * (max(coeffs) + 1)
    for ex, v in coeffs.items():
        out[ex] = v
    return UniPoly(F, out)


def w_degree_bound(F: GF) -> int:
    q = F.base.order
    return (F.order - 1) // (q - 1)


def w_spanning_set(F: GF) -> list[UniPoly]:
    q = F.base.order
    k = F.degree
    out = []
    for alphas in itertools.product((0, 1), repeat=k):
        e = sum(a * q**i for i, a in enumerate(alphas))
        for j in range(k):
            out.append(trace_monomial(F, q**j, e))
    return out


def _to_base_vector(f: UniPoly, length: int) -> list[int]:
    F = f.field
    vec = []
    for i in range(length):
        vec.extend(F.coords(f.coeff(i)))
    return vec


def base_row_reduce(B: GF, rows):
    """Row-reduce integer vectors over the field B; return the independent rows."""
    basis = []  # (pivot, row) with row[pivot] == 1
    for row in rows:
        r = list(row)
        for piv, b in basis:
            c = r[piv]
            if c:
                r = [B.sub(x, B.mul(c, y)) for x, y in zip(r, b)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is None:
            continue
        inv = B.inv(r[nz])
        r = [B.mul(inv, x) for x in r]
        new_basis = []
        for piv, b in basis:
            c = b[nz]
            if c:
                b = [B.sub(x, B.mul(c, y)) for x, y in zip(b, r)]
            new_basis.append((piv, b))
        basis = new_basis + [(nz, r)]
    return basis


def w_basis(F: GF) -> list[UniPoly]:
    """An F_q-basis of W together with the constants (2^k elements)."""
    spanning = w_spanning_set(F)
    B = F.base
    length = w_degree_bound(F) + 1
    k = F.degree
    # keep the original polynomials that contribute new directions
    chosen = []
    basis_rows = []
    for poly in spanning:
        vec = _to_base_vector(poly, length)
        trial = base_row_reduce(B, basis_rows + [vec])
        if len(trial) > len(basis_rows):
            basis_rows = [b for _, b in trial]
            chosen.append(poly)
    return chosen


def span_over_base(basis: list[UniPoly]) -> list[UniPoly]:
    """All F_q-linear combinations of ``basis`` (F_q = base of the field)."""
    if not basis:
        return []
    F = basis[0].field
    q = F.base.order
    out = []
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        acc = UniPoly.zero(F)
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + b.scale(c)
        out.append(acc)
    return out


def w_family(F: GF) -> list[UniPoly]:
    """Every nonconstant member of W, in a deterministic order."""
    return [f for f in span_over_base(w_basis(F)) if not f.is_constant()]


def w_membership(f: UniPoly) -> bool:
    _require_nonconstant(f)
    F = f.field
    if F.base is None:
        return False
    if f.deg > w_degree_bound(F):
        return False
    rep = value_set(f)
    q = F.base.order
    return rep.values_in_base and rep.size == q


def k2_reference_basis(F: GF, lam: int) -> list[UniPoly]:
    """1, x^(q+1), x + x^q, lam x + (lam x)^q for a degree-2 extension."""
    q = F.base.order
    one = UniPoly(F, [1])
    norm = UniPoly.monomial(F, q + 1)
    tr = UniPoly.monomial(F, q) + UniPoly.x(F)
    lt = UniPoly.monomial(F, 1, lam) + UniPoly.monomial(F, q, F.pow(lam, q))
    return [one, norm, tr, lt]


# -- two-valued MVSPs ---------------------------------------------------------


def _check_subset(F: GF, S):
    S = sorted(set(int(a) for a in S))
    if not S or len(S) >= F.order or any(not 0 <= a < F.order for a in S):
        raise BadSubset("need a nonempty proper subset of the field")
    return S


def two_value_split(F: GF, S) -> UniPoly:
    """-g' h with g = prod_{a in S}(x - a), h = (x^q - x)/g: value 1 on S, 0 elsewhere."""
    S = _check_subset(F, S)
    g = UniPoly.from_roots(F, S)
    h = UniPoly.from_roots(F, [a for a in range(F.order) if a not in S])
    return -(g.derivative() * h)


def lagrange_two_value(F: GF, S) -> UniPoly:
    S = _check_subset(F, S)
    q = F.order
    acc = UniPoly.zero(F)
    for a in S:
        lin = UniPoly(F, [F.neg(a), 1])
        acc = acc + (UniPoly(F, [1]) - lin ** (q - 1))
    return acc


def _subsets(F: GF):
    q = F.order
    for mask in range(1, 2**q - 1):
        yield [a for a in range(q) if mask >> a & 1]


def typeA_enumerate(F: GF) -> list[tuple[list, UniPoly, UniPoly]]:
    """(S, g, f) for every monic proper split divisor g of x^q - x with g'' = 0."""
    out = []
    for S in _subsets(F):
        g = UniPoly.from_roots(F, S)
        if g.derivative().derivative().is_zero():
            out.append((S, g, two_value_split(F, S)))
    return out


def _split_set(f: UniPoly):
    vals = value_array(f)
    return [int(a) for a in np.flatnonzero(vals == 1)], vals


def is_typeA(f: UniPoly):
    """Witness g when f = (g'/g)(x - x^q) with g'' = 0, else None."""
    F = f.field
    S, vals = _split_set(f)
    if not S or len(S) == F.order or np.any((vals != 0) & (vals != 1)):
        return None
    g = UniPoly.from_roots(F, S)
    if not g.derivative().derivative().is_zero():
        return None
    if two_value_split(F, S) != f:
        return None
    return g


def is_typeB(f: UniPoly):
    return is_typeA(UniPoly(f.field, [1]) - f)


def theta_of_type(f: UniPoly):
    """+1 or -1 when f(f - 1) = theta (x^q - x) f'; requires V_f = {0, 1}."""
    F = f.field
    if values_of(f) != [0, 1]:
        raise BadValueSet("value set must be {0, 1}")
    lhs = f * (f - 1)
    rhs = frobenius_poly(F) * f.derivative()
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return None


def normalize_two_values(f: UniPoly):
    """(a, b, h) with V_f = {a, b}, h = (f - b)/(a - b) valued in {0, 1}.

    a is the larger packed value, so the normalisation is deterministic.
    """
    F = f.field
    vals = values_of(f)
    if len(vals) != 2:
        raise BadValueSet("value set must have two elements")
    b, a = vals
    h = (f - UniPoly.const(F, b)).scale(F.inv(F.sub(a, b)))
    return a, b, h


def vf1_decompose(f: UniPoly):
    """(n, a) with f - alpha = (x^q - x)^n a^p and (x^q - x) not dividing a."""
    F = f.field
    vals = values_of(f)
    if len(vals) != 1:
        raise BadValueSet("value set must be a single element")
    u = f - UniPoly.const(F, vals[0])
    if u.is_zero():
        return None
    X = frobenius_poly(F)
    n = 0
    while True:
        qt, rem = divmod(u, X)
        if not rem.is_zero():
            break
        u, n = qt, n + 1
    a = pth_power_root(u)
    if a is None:
        return None
    return n, a


def affine_equivalent(f: UniPoly, g: UniPoly):
    """First (a, b) in ascending packed order with g(x) = f(a x + b)."""
    if f.field != g.field:
        return None
    F = f.field
    if f.deg != g.deg:
        return None
    d = f.deg
    for a in range(1, F.order):
        if d > 0 and F.mul(f.lc, F.pow(a, d)) != g.lc:
            continue
        for b in range(F.order):
            if f.compose(UniPoly(F, [b, a])) == g:
                return a, b
    return None
