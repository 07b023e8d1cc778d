"""Splitting numbers of a smooth cubic under simple cyclic covers of P^2,
computed over prime fields and cross-checked by two independent routes."""

from .arith import PrimeField, Scalar, TruncSeries, DenseMatrix, invert_scalar, kernel_basis, series_product, series_valuation
from .forms import HomogeneousForm, ProjPoint, evaluate_form
from .elliptic import (
    INF,
    DivisorOnE,
    EPoint,
    WeierstrassCurve,
    add_points,
    class_order,
    divisor_class_point,
    find_point_of_order,
    group_order,
    point_order,
    scalar_multiply,
)
from .geometry import curve_is_smooth, intersection_divisor, intersection_multiplicity, local_parametrization
from .splitting import (
    CoverSpec,
    ReducedBranchDivisor,
    SplittingCertificate,
    assemble_dbc,
    certify,
    lambda_invariant,
    principality_witness,
    splitting_number,
    splitting_number_oracle,
    verify_witness,
)
from .construct import ConstructionRequest, build_kplet, interpolate_branched_curve, sample_divisor_with_class, verify_type_bm
from .certificate import emit_certificate, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "PrimeField",
    "Scalar",
    "TruncSeries",
    "DenseMatrix",
    "invert_scalar",
    "kernel_basis",
    "series_product",
    "series_valuation",
    "HomogeneousForm",
    "ProjPoint",
    "evaluate_form",
    "INF",
    "DivisorOnE",
    "EPoint",
    "WeierstrassCurve",
    "add_points",
    "class_order",
    "divisor_class_point",
    "find_point_of_order",
    "group_order",
    "point_order",
    "scalar_multiply",
    "curve_is_smooth",
    "intersection_divisor",
    "intersection_multiplicity",
    "local_parametrization",
    "CoverSpec",
    "ReducedBranchDivisor",
    "SplittingCertificate",
    "assemble_dbc",
    "certify",
    "lambda_invariant",
    "principality_witness",
    "splitting_number",
    "splitting_number_oracle",
    "verify_witness",
    "ConstructionRequest",
    "build_kplet",
    "interpolate_branched_curve",
    "sample_divisor_with_class",
    "verify_type_bm",
    "emit_certificate",
    "verify_certificate",
]
