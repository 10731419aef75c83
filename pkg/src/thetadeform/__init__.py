"""Theta-deformations of torus-graded *-algebras and compact matrix quantum groups.

Exact phase arithmetic, twisted products on a normal-ordered basis, Hopf
structure checks for SU(n)_theta, and coactions with their parameter
constraints and invariant subalgebras.
"""

from __future__ import annotations

from .algebra import (
    AlgebraContext,
    Coefficient,
    Element,
    ExchangeRelation,
    GeneratorSymbol,
    Presentation,
    ideal_membership,
    star,
    tensor_context,
    twisted_product,
)
from .catalog import build_nc_torus, build_sphere, build_su_theta, build_torus_group, lookup, thetaprime
from .coaction import (
    CoactionSpec,
    ExtensionStatus,
    builtin_spec,
    check_coaction_axioms,
    check_extension,
    conditional_expectation,
    fixed_points,
    match_presentation,
)
from .errors import (
    BoundError,
    ContextError,
    DimensionError,
    InvariantViolation,
    NoNontrivialDeformation,
    ParseError,
    ThetaDeformError,
    UnsupportedDegree,
)
from .hopf import MatrixQuantumGroup, antipode, coproduct, counit, haar_state, hopf_report
from .phase import AffineForm, DeformationMatrix, PhaseExponent, chi, exchange_phase, parse_form
from .report import Report, Status

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "AlgebraContext",
    "BoundError",
    "CoactionSpec",
    "Coefficient",
    "ContextError",
    "DeformationMatrix",
    "DimensionError",
    "Element",
    "ExchangeRelation",
    "ExtensionStatus",
    "GeneratorSymbol",
    "InvariantViolation",
    "MatrixQuantumGroup",
    "NoNontrivialDeformation",
    "ParseError",
    "PhaseExponent",
    "Presentation",
    "Report",
    "Status",
    "ThetaDeformError",
    "UnsupportedDegree",
    "antipode",
    "build_nc_torus",
    "build_sphere",
    "build_su_theta",
    "build_torus_group",
    "builtin_spec",
    "check_coaction_axioms",
    "check_extension",
    "chi",
    "conditional_expectation",
    "coproduct",
    "counit",
    "exchange_phase",
    "fixed_points",
    "haar_state",
    "hopf_report",
    "ideal_membership",
    "lookup",
    "match_presentation",
    "parse_form",
    "star",
    "tensor_context",
    "thetaprime",
    "twisted_product",
]
