"""
Ideal calculus and origin-local lengths.

Exports:
- Ideal: generators with cached Gröbner bases
- ideal_power / frobenius_power / colon / saturation / eliminate / intersection / kernel_of_map
- QuotientRing / LengthReport / local_length / length / edim / min_gens
"""

from .ideal import Ideal, krull_dimension, standard_monomials
from .calculus import (
    colon,
    eliminate,
    frobenius_power,
    ideal_power,
    intersection,
    kernel_of_map,
    saturation,
)
from .quotient import LengthReport, QuotientRing, edim, length, local_length, min_gens

__all__ = [
    "Ideal", "krull_dimension", "standard_monomials", "colon", "eliminate", "frobenius_power",
    "ideal_power", "intersection", "kernel_of_map", "saturation", "LengthReport", "QuotientRing",
    "edim", "length", "local_length", "min_gens",
]
