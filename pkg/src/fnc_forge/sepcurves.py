"""Curves with separated variables f(x) = g(y) and their Frobenius nonclassicality.

Two independent tests are provided.  The direct one divides the Frobenius
form of f(x) - g(y) by the curve itself; because the irreducible factors of
f(x) - g(y) are pairwise coprime (when the curve is not a p-th power), this
decides nonclassicality of every component at once, with no factoring.
The second looks for a single monic T and theta with T(f) = theta (x^q - x) f'
and T(g) = theta (y^q - y) g'; the two agree whenever the components are
defined over the base field, which we can only certify in special cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .bipoly import BiPoly, bipoly_divides, frobenius_form
from .errors import ConstantInput, LevelMismatch, MethodDisagreement, PreconditionFailed
from .field import field_from_label
from .mvsp import (
    frobenius_identity_theta,
    normalize_two_values,
    theta_of_type,
    values_of,
    vf1_decompose,
)
from .poly import UniPoly


@dataclass(frozen=True)
class SepCurve:
    f: UniPoly
    g: UniPoly

    def __post_init__(self):
        if self.f.field != self.g.field:
            raise LevelMismatch(f"{self.f.field.label} vs {self.g.field.label}")
        if self.f.is_constant() or self.g.is_constant():
            raise ConstantInput("both sides of a separated curve must be nonconstant")
        if self.f.derivative().is_zero() and self.g.derivative().is_zero():
            raise PreconditionFailed("f(x) - g(y) is a polynomial in x^p and y^p")

    @property
    def field(self):
        return self.f.field

    def bipoly(self) -> BiPoly:
        return BiPoly.separated(self.f, self.g)

    def swap(self) -> "SepCurve":
        return SepCurve(self.g, self.f)

    @property
    def degree(self) -> int:
        return max(self.f.deg, self.g.deg)

    def to_dict(self):
        return {"field": self.field.label, "f": self.f.to_list(), "g": self.g.to_list()}

    @classmethod
    def from_dict(cls, d):
        F = field_from_label(d["field"])
        return cls(UniPoly(F, d["f"]), UniPoly(F, d["g"]))


@dataclass
class FncReport:
    field: str
    divisibility_verdict: bool | None
    mills_verdict: bool | None
    certificate: dict | None
    components_rational_caveat: bool
    method_agreement: bool | None
    route: str = ""
    detail: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {
            "field": self.field,
            "divisibility_verdict": self.divisibility_verdict,
            "mills_verdict": self.mills_verdict,
            "certificate": self.certificate,
            "components_rational_caveat": self.components_rational_caveat,
            "method_agreement": self.method_agreement,
            "route": self.route,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    @property
    def verdict(self) -> bool:
        if self.divisibility_verdict is not None:
            return self.divisibility_verdict
        return bool(self.mills_verdict)


def fnc_all_components(c: SepCurve) -> bool:
    """True iff f(x) - g(y) divides its own Frobenius form."""
    Fxy = c.bipoly()
    return bipoly_divides(frobenius_form(Fxy), Fxy) is not None


def _kummer_view(c: SepCurve):
    """(n, h) when the curve reads y^n = h(x) after scaling, else None."""
    F = c.field
    for side, other in ((c.g, c.f), (c.f, c.g)):
        nz = [i for i, a in enumerate(side.coeffs) if a]
        if len(nz) <= 2 and (len(nz) == 1 or nz[0] == 0):
            n = side.deg
            b = side.coeff(0) if nz[0] == 0 else 0
            h = (other - UniPoly.const(F, b)).scale(F.inv(side.lc))
            return n, h
    return None


def components_rational(c: SepCurve) -> bool:
    """Whether the irreducible components are provably defined over the field.

    Lines are; so are Kummer curves y^n = h(x) with n | q - 1 that are
    absolutely irreducible or have a point with y != 0.  Anything else is
    left unproven.
    """
    if min(c.f.deg, c.g.deg) == 1:
        return True
    view = _kummer_view(c)
    if view is None:
        return False
    n, h = view
    q = c.field.order
    if (q - 1) % n or h.is_constant():
        return False
    from .superelliptic import SuperCurve, kummer_irreducible

    try:
        verdict = kummer_irreducible(SuperCurve(n, h))
    except PreconditionFailed:
        return False
    return verdict in ("ABS_IRREDUCIBLE", "RATIONAL_FACTORS")


def fnc_via_mills(c: SepCurve) -> FncReport:
    """Search for the (T, theta) pair shared by f and g."""
    F = c.field
    p = F.p
    vf, vg = values_of(c.f), values_of(c.g)
    caveat = not components_rational(c)
    detail = {"values_f": vf, "values_g": vg}
    if vf != vg:
        return FncReport(F.label, None, False, None, caveat, None, "value_sets_differ", detail)
    T = UniPoly.from_roots(F, vf)
    tf = frobenius_identity_theta(T, c.f)
    tg = frobenius_identity_theta(T, c.g)
    verdict = tf is not None and tf == tg
    detail["theta_f"] = tf
    detail["theta_g"] = tg
    if len(vf) == 1:
        route = "single_value"
        df, dg = vf1_decompose(c.f), vf1_decompose(c.g)
        detail["n"] = df[0] if df else None
        detail["m"] = dg[0] if dg else None
        detail["route_verdict"] = bool(
            df and dg and df[0] % p and (df[0] - dg[0]) % p == 0
        )
    elif len(vf) == 2 and p > 2:
        route = "two_values"
        a_f, b_f, hf = normalize_two_values(c.f)
        a_g, b_g, hg = normalize_two_values(c.g)
        sf, sg = theta_of_type(hf), theta_of_type(hg)
        detail["type_f"] = {1: "A", -1: "B"}.get(sf)
        detail["type_g"] = {1: "A", -1: "B"}.get(sg)
        detail["route_verdict"] = sf is not None and sf == sg
    else:
        route = "mills"
    cert = {"T": T.to_list(), "theta": tf} if verdict else None
    return FncReport(F.label, None, verdict, cert, caveat, None, route, detail)


def fnc_cross_check(c: SepCurve) -> FncReport:
    """Both tests; a disagreement that the theory forbids raises."""
    rep = fnc_via_mills(c)
    rep.divisibility_verdict = fnc_all_components(c)
    rep.method_agreement = rep.divisibility_verdict == rep.mills_verdict
    if not rep.method_agreement and (rep.mills_verdict or not rep.components_rational_caveat):
        raise MethodDisagreement(
            f"divisibility says {rep.divisibility_verdict}, certificate search says "
            f"{rep.mills_verdict} for {c.to_dict()}"
        )
    return rep


def fried_macrae_divides(T: UniPoly, f: UniPoly, g: UniPoly) -> bool:
    """f(x) - g(y) divides T(f(x)) - T(g(y))."""
    Fxy = BiPoly.separated(f, g)
    D = BiPoly.separated(T.compose(f), T.compose(g))
    return bipoly_divides(D, Fxy) is not None
