"""Superelliptic curves y^n = f(x): nonclassicality identity, degree reduction,
structural consequences, Kummer genus and irreducibility certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .bipoly import BiPoly
from .errors import (
    CharDividesN,
    ConstantInput,
    DegreeTooHigh,
    NotARootProfile,
    PreconditionFailed,
)
from .field import FieldElem, field_from_label
from .mvsp import values_of
from .poly import UniPoly, frobenius_poly, gcd, rational_root_split, squarefree_decomposition, value_array

ABS_IRREDUCIBLE = "ABS_IRREDUCIBLE"
RATIONAL_FACTORS = "RATIONAL_FACTORS"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SuperCurve:
    n: int
    f: UniPoly

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("exponent n must be positive")
        if self.f.is_constant():
            raise ConstantInput("f must be nonconstant")
        if self.n % self.f.field.p == 0 and self.f.derivative().is_zero():
            raise PreconditionFailed("y^n - f(x) is a polynomial in x^p and y^p")

    @property
    def field(self):
        return self.f.field

    @property
    def q(self) -> int:
        return self.f.field.order

    @property
    def d(self) -> int:
        return self.f.deg

    def bipoly(self) -> BiPoly:
        """y^n - f(x)."""
        return BiPoly(self.field, {(0, self.n): 1}) - BiPoly.from_x(self.f)

    def as_separated(self):
        from .sepcurves import SepCurve

        return SepCurve(self.f, UniPoly.monomial(self.field, self.n))

    def to_dict(self):
        return {"field": self.field.label, "n": self.n, "f": self.f.to_list()}

    @classmethod
    def from_dict(cls, d):
        return cls(d["n"], UniPoly(field_from_label(d["field"]), d["f"]))


@dataclass
class GenusReport:
    genus: int
    ramification: list = dc_field(default_factory=list)
    smooth_plane: bool = False

    def to_dict(self):
        return {"genus": self.genus, "ramification": self.ramification, "smooth_plane": self.smooth_plane}

    @classmethod
    def from_dict(cls, d):
        return cls(d["genus"], d["ramification"], d["smooth_plane"])


def garcia_test(c: SuperCurve) -> bool:
    """n | q-1 and n f (f^((q-1)/n) - 1) = (x^q - x) f'."""
    F, n, f = c.field, c.n, c.f
    q = F.order
    if (q - 1) % n or f.deg > n:
        return False
    lhs = (f * (f ** ((q - 1) // n) - 1)).scale(F.from_int(n))
    return lhs == frobenius_poly(F) * f.derivative()


def _as_base_int(c: SuperCurve, x0) -> int:
    F = c.field
    if isinstance(x0, FieldElem):
        if not x0.field.contains_field(F) or x0.value >= F.order:
            raise NotARootProfile(f"{x0} does not lie in {F.label}")
        return x0.value
    x0 = int(x0)
    if not 0 <= x0 < F.order:
        raise NotARootProfile(f"{x0} is not an element of {F.label}")
    return x0


def reduce_degree(c: SuperCurve, x0) -> SuperCurve:
    """Move the root x0 to the origin and swap x with the line at infinity.

    If x0 has multiplicity k the new right-hand side has degree n - k.
    """
    if c.d > c.n:
        raise DegreeTooHigh(f"deg f = {c.d} exceeds n = {c.n}")
    F = c.field
    a = _as_base_int(c, x0)
    shifted = c.f.compose(UniPoly(F, [a, 1]))
    cs = shifted.to_list() + [0] * (c.n + 1 - len(shifted.coeffs))
    return SuperCurve(c.n, UniPoly(F, cs[::-1]))


def is_smooth_plane(n: int, f: UniPoly) -> bool:
    """Whether the projective closure of y^n = f(x) is nonsingular."""
    F = f.field
    p = F.p
    d = f.deg
    if n == 1:
        affine = True
    elif n % p:
        affine = gcd(f, f.derivative()).is_constant()
    else:
        df = f.derivative()
        affine = df.is_constant() and not df.is_zero()
    if d == n:
        infinity = n % p != 0 or f.coeff(n - 1) != 0
    else:
        infinity = abs(d - n) == 1
    return affine and infinity


def kummer_genus(c: SuperCurve) -> GenusReport:
    """Genus from the ramification of x over the roots of f and infinity."""
    n, f = c.n, c.f
    if n % c.field.p == 0:
        raise CharDividesN(f"characteristic {c.field.p} divides n = {n}")
    parts = squarefree_decomposition(f)
    if math.gcd(n, *(m for _, m in parts)) != 1:
        raise PreconditionFailed("y^n = f(x) is not absolutely irreducible")
    ram = []
    total = 0
    for g, m in parts:
        e = math.gcd(n, m)
        ram.append({"place": g.to_list(), "count": g.deg, "valuation": m, "gcd": e})
        total += g.deg * (n - e)
    e_inf = math.gcd(n, f.deg)
    ram.append({"place": "infinity", "count": 1, "valuation": -f.deg, "gcd": e_inf})
    total += n - e_inf
    twice = 2 - 2 * n + total
    if twice % 2:
        raise AssertionError("odd ramification sum")
    return GenusReport(twice // 2, ram, is_smooth_plane(n, f))


def kummer_irreducible(c: SuperCurve) -> str:
    F, n, f = c.field, c.n, c.f
    if (F.order - 1) % n:
        raise PreconditionFailed(f"n = {n} does not divide q - 1 = {F.order - 1}")
    if math.gcd(n, *(m for _, m in squarefree_decomposition(f))) == 1:
        return ABS_IRREDUCIBLE
    vals = value_array(f)
    vals = vals[vals != 0]
    if len(vals) and np.any(F.pow_arr(vals, (F.order - 1) // n) == 1):
        return RATIONAL_FACTORS
    return UNKNOWN


def corollary_checks(c: SuperCurve) -> dict:
    """Six structural consequences of the nonclassicality identity.

    Every flag must come out true for a curve passing garcia_test; a false
    flag means a bug somewhere.
    """
    if not garcia_test(c):
        raise PreconditionFailed("garcia_test does not hold")
    F, n, f = c.field, c.n, c.f
    p, q, d = F.p, F.order, c.d
    df = f.derivative()
    split = rational_root_split(f)
    rational_mults = [m for m, r, _ in split if r]
    nvals = len(values_of(f))

    flags = {}
    flags["i"] = n % p != 0 and not df.is_zero()
    lower_ok = d * (n + q - 1) >= n * q
    upper_hit = d == n
    lower_hit = d * (n + q - 1) == n * q
    flags["ii"] = (
        lower_ok
        and d <= n
        and upper_hit == (d % p != 0)
        and lower_hit == df.is_constant()
    )
    flags["iii"] = all((nr == 0) if m % p else (r == 0) for m, r, nr in split)
    simple = any(m == 1 for m, r, nr in split if r + nr)
    flags["iv"] = bool(rational_mults) and (not simple or n % p == 1 % p)
    flags["v"] = (n % p == 1 % p) == df.derivative().is_zero()
    flags["vi"] = all(
        k * nvals <= n - 1 and (k - n) % p == 0 for k in rational_mults if 0 < k < d
    )
    return {
        "flags": flags,
        "passed": all(flags.values()),
        "detail": {
            "n": n,
            "deg_f": d,
            "value_set_size": nvals,
            "upper_attained": upper_hit,
            "lower_attained": lower_hit,
            "root_split": [list(t) for t in split],
        },
    }
