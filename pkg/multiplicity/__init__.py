"""
Multiplicity package: Hilbert-Samuel and Hilbert-Kunz invariants.

Exports:
- hilbert_samuel / multiplicity / multiplicity_of_sop / chi1: length-table multiplicities
- hk_sequence / frobenius_twisted_multiplicity: Frobenius-power estimates
- find_minimal_reduction: seeded search for reductions of m
"""

from .hilbert_samuel import (
    Chi1Report,
    MultiplicityReport,
    NotPrimaryError,
    NotSystemOfParametersError,
    chi1,
    hilbert_samuel,
    multiplicity,
    multiplicity_of_sop,
)
from .hilbert_kunz import HKSequence, default_e_max, frobenius_twisted_multiplicity, hk_sequence
from .reduction import MinimalReduction, ReductionSearchError, find_minimal_reduction

__all__ = [
    "Chi1Report", "MultiplicityReport", "NotPrimaryError", "NotSystemOfParametersError", "chi1",
    "hilbert_samuel", "multiplicity", "multiplicity_of_sop", "HKSequence", "default_e_max",
    "frobenius_twisted_multiplicity", "hk_sequence", "MinimalReduction", "ReductionSearchError",
    "find_minimal_reduction",
]
