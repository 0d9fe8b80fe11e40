"""Exact construction and multivariate P-/Q-polynomial analysis of commutative association schemes."""
__version__ = "0.1.0"

from .constructors import build, parse_family
from .orders import MonomialOrder
from .polycheck import Labeling, check_P, check_Q, infer_labeling, search_P, search_Q
from .polystruct import Polynomial, poly_structure, poly_structure_star, verify_structure
from .scheme import RelationScheme, from_relation_matrix, scheme_from_json, scheme_to_json
from .spectrum import Spectrum, compute_spectrum

__all__ = [
    "Labeling",
    "MonomialOrder",
    "Polynomial",
    "RelationScheme",
    "Spectrum",
    "build",
    "check_P",
    "check_Q",
    "compute_spectrum",
    "from_relation_matrix",
    "infer_labeling",
    "parse_family",
    "poly_structure",
    "poly_structure_star",
    "scheme_from_json",
    "scheme_to_json",
    "search_P",
    "search_Q",
    "verify_structure",
]
