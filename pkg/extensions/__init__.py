"""
Extensions package: local maps between presented local rings.

Exports:
- LocalMap / make_local_map / ClosedFiber / is_ci_fiber: validated maps and their closed fibers
- freeness_probe / ProbeReport: length-based rejection of non-flat maps
- scalar_extend / extend_map: base change to F_{p^k}
- IntegerPresentation / specialize_mod_p / BadPrime: reduction modulo primes
- cohen_factor / CohenFactorization: R -> T -> S = T/J with J in n_T^2
"""

from .local_map import (
    ClosedFiber,
    DimensionMismatchError,
    IllDefinedMapError,
    InfiniteFiberError,
    LocalMap,
    ProbeReport,
    extend_map,
    freeness_probe,
    is_ci_fiber,
    make_local_map,
)
from .scalar import scalar_extend
from .specialize import BadPrime, IntegerPresentation, specialize_mod_p
from .cohen import CohenFactorization, PeelSearchError, cohen_factor

__all__ = [
    "ClosedFiber", "DimensionMismatchError", "IllDefinedMapError", "InfiniteFiberError", "LocalMap",
    "ProbeReport", "extend_map", "freeness_probe", "is_ci_fiber", "make_local_map", "scalar_extend",
    "BadPrime", "IntegerPresentation", "specialize_mod_p", "CohenFactorization", "PeelSearchError",
    "cohen_factor",
]
