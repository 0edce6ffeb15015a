"""Frobenius nonclassical curves with separated variables over finite fields."""

from .bipoly import BiPoly, bipoly_divides, frobenius_form
from .census import (
    ArcReport,
    CurveStats,
    arc_completeness,
    census_superelliptic,
    count_points_projective,
    hvh_check,
    sv_bound,
)
from .errors import FncForgeError
from .field import FieldElem, FieldTower, GF, build_tower, fiber_count, parse_field
from .mvsp import is_mvsp, mills_criterion, mills_structure, w_basis, w_family, w_membership
from .poly import UniPoly, parse_poly, root_multiplicities, value_set
from .sepcurves import FncReport, SepCurve, fnc_all_components, fnc_cross_check, fnc_via_mills
from .suite import verify_paper_suite
from .superelliptic import (
    GenusReport,
    SuperCurve,
    corollary_checks,
    garcia_test,
    kummer_genus,
    kummer_irreducible,
    reduce_degree,
)

__all__ = [
    "ArcReport", "BiPoly", "CurveStats", "FieldElem", "FieldTower", "FncForgeError", "FncReport",
    "GF", "GenusReport", "SepCurve", "SuperCurve", "UniPoly", "arc_completeness", "bipoly_divides",
    "build_tower", "census_superelliptic", "corollary_checks", "count_points_projective", "fiber_count",
    "fnc_all_components", "fnc_cross_check", "fnc_via_mills", "frobenius_form", "garcia_test",
    "hvh_check", "is_mvsp", "kummer_genus", "kummer_irreducible", "mills_criterion", "mills_structure",
    "parse_field", "parse_poly", "reduce_degree", "root_multiplicities", "sv_bound", "value_set",
    "verify_paper_suite", "w_basis", "w_family", "w_membership",
]
