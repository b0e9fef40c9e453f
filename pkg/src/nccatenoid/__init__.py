"""Symbolic and numerical toolkit for the noncommutative catenoid algebra."""
from .coeff import GaussianRational, Scalar
from .errors import (
    CatenoidError,
    ConstraintViolation,
    DegenerateParams,
    DenominatorTooSmall,
    EqualPlanck,
    ExpressionError,
    IncompatibleRatio,
    NonIntegrable,
    NotCertifiedPositive,
    NotInvertible,
    ParseError,
    UnknownSymbol,
)
from .freealg import FreeElement, Letter, check_all_ambiguities, normalize
from .localization import LocalElement, certify, loc_inv, loc_mul, loc_star
from .nfalg import AlgElement, nf_derive, nf_mul, nf_star
from .parser import parse_expr, parse_free, parse_local

__version__ = "0.1.0"

__all__ = [
    "AlgElement",
    "CatenoidError",
    "ConstraintViolation",
    "DegenerateParams",
    "DenominatorTooSmall",
    "EqualPlanck",
    "ExpressionError",
    "FreeElement",
    "GaussianRational",
    "IncompatibleRatio",
    "Letter",
    "LocalElement",
    "NonIntegrable",
    "NotCertifiedPositive",
    "NotInvertible",
    "ParseError",
    "Scalar",
    "UnknownSymbol",
    "certify",
    "check_all_ambiguities",
    "loc_inv",
    "loc_mul",
    "loc_star",
    "nf_derive",
    "nf_mul",
    "nf_star",
    "normalize",
    "parse_expr",
    "parse_free",
    "parse_local",
]
