"""flowjoints: exact-arithmetic incidence geometry of polynomial vector field flows."""

from .poly import Poly, PolyError, parse_poly
from .fields import (
    AlgebraResult,
    BracketWord,
    VectorField,
    apply_field,
    continuum_exponents,
    generated_algebra,
    hormander_check,
    iterated_bracket,
    lie_bracket,
)
from .flows import (
    Curve,
    NonPolynomialFlowError,
    ProjectionMap,
    eval_curve,
    exp_flow,
    flow_map,
    heisenberg_fields,
    heisenberg_omega_field,
    heisenberg_projections,
    moment_fields,
    moment_projections,
    project_curve,
    xray_fields,
    xray_projections,
)
from .algnum import AlgebraicNumber, AlgebraicPoint

__version__ = "0.1.0"

__all__ = [
    "AlgebraResult",
    "AlgebraicNumber",
    "AlgebraicPoint",
    "BracketWord",
    "Curve",
    "NonPolynomialFlowError",
    "Poly",
    "PolyError",
    "ProjectionMap",
    "VectorField",
    "apply_field",
    "continuum_exponents",
    "eval_curve",
    "exp_flow",
    "flow_map",
    "generated_algebra",
    "heisenberg_fields",
    "heisenberg_omega_field",
    "heisenberg_projections",
    "hormander_check",
    "iterated_bracket",
    "lie_bracket",
    "moment_fields",
    "moment_projections",
    "parse_poly",
    "project_curve",
    "xray_fields",
    "xray_projections",
]
