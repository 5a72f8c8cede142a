"""
Algebra kernel: finite fields, polynomials and the Gröbner engine.

Exports:
- FieldSpec / galois_field: F_p and F_{p^k} arithmetic
- PolyRing / Polynomial / MonomialOrder: polynomial rings and their elements
- groebner_basis / normal_form: reduced bases and unique remainders
- standard_monomials / count_standard_monomials / krull_dimension: quotient invariants
"""

from .errors import (
    AlgebraError,
    FieldError,
    InfiniteLengthError,
    NotLocalError,
    ResourceCapError,
    StructuralError,
)
from .field import FieldSpec, galois_field
from .polynomial import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial, block_order
from .groebner import (
    INFINITE,
    GroebnerBasis,
    count_standard_monomials,
    groebner_basis,
    is_infinite,
    krull_dimension,
    normal_form,
    standard_monomials,
)

__all__ = [
    "AlgebraError", "FieldError", "InfiniteLengthError", "NotLocalError", "ResourceCapError",
    "StructuralError", "FieldSpec", "galois_field", "GREVLEX", "LEX", "MonomialOrder",
    "PolyRing", "Polynomial", "block_order", "INFINITE", "GroebnerBasis",
    "count_standard_monomials", "groebner_basis", "is_infinite", "krull_dimension",
    "normal_form", "standard_monomials",
]
