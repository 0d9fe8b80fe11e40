"""Scheme families, combinators and closed-form intersection-number oracles."""
from .families import (
    Attenuated,
    BuiltScheme,
    Complete,
    Composition,
    Cycle,
    CyclicGroup,
    DirectProduct,
    Dodecahedron,
    Extension,
    GeneralizedJohnson,
    Hamming,
    Johnson,
    NonbinaryJohnson,
    attenuated_domain,
    build,
    describe,
    expected_size,
    parse_family,
)

__all__ = [
    "Attenuated",
    "BuiltScheme",
    "Complete",
    "Composition",
    "Cycle",
    "CyclicGroup",
    "DirectProduct",
    "Dodecahedron",
    "Extension",
    "GeneralizedJohnson",
    "Hamming",
    "Johnson",
    "NonbinaryJohnson",
    "attenuated_domain",
    "build",
    "describe",
    "expected_size",
    "parse_family",
]
