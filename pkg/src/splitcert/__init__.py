"""splitcert: exact certificates for splitting and SPS divisors on
double covers of projective space."""

__version__ = "0.1.0"

from .field import CoefficientField, FieldError
from .poly import (
    DegreeError,
    MismatchError,
    ParseError,
    Polynomial,
    divide_exact,
    formal_square_root,
    format_poly,
    monomials_of_degree,
    parse,
    substitute_linear,
)
from .quadring import DoubleCover, QuadRingElement, conjugate, norm, ring_mul
from .sps import SpsCertificate, sps_branch_components, sps_search, sps_verify
from .splitting import (
    SplitCertificate,
    SpsBasis,
    split_search,
    split_verify,
    witness_element,
)
from .enum_sps import SpsEnumeration, enumerate_sps_degree, enumerate_sps_lines
from .util import CostGuardError

__all__ = [
    "CoefficientField", "FieldError", "Polynomial", "ParseError", "DegreeError",
    "MismatchError", "parse", "format_poly", "divide_exact", "substitute_linear",
    "formal_square_root", "monomials_of_degree", "DoubleCover", "QuadRingElement",
    "ring_mul", "conjugate", "norm", "SpsCertificate", "sps_verify", "sps_search",
    "sps_branch_components", "SplitCertificate", "SpsBasis", "split_verify",
    "split_search", "witness_element", "SpsEnumeration", "enumerate_sps_lines",
    "enumerate_sps_degree", "CostGuardError",
]
