"""
Verify package: theorem checks over fixtures and the run harness.

Exports:
- CheckReport / RunReport: exact, key-sorted reports
- check_*: one function per check kind
- Fixture_runner: process-pool runner over fixture files
"""

from .reports import KERNEL_BUG_LABEL, VERSION, CheckReport, RunReport, to_jsonable
from .checks import (
    TOLERANCE,
    CheckPreconditionError,
    check_adjoined_variable_identity,
    check_chi1,
    check_chi1_vanishing,
    check_ci_fiber,
    check_cohen_structure,
    check_edim,
    check_embdim_bounds,
    check_flatness,
    check_generator_growth,
    check_hk_chain,
    check_hk_sandwich,
    check_interchange,
    check_lech,
    check_mod_p,
    check_scalar_extension,
    check_sop_estimate,
    interchange_table,
)

__all__ = [
    "KERNEL_BUG_LABEL", "VERSION", "CheckReport", "RunReport", "to_jsonable", "TOLERANCE",
    "CheckPreconditionError", "check_adjoined_variable_identity", "check_chi1", "check_chi1_vanishing",
    "check_ci_fiber", "check_cohen_structure", "check_edim", "check_embdim_bounds", "check_flatness",
    "check_generator_growth", "check_hk_chain", "check_hk_sandwich", "check_interchange", "check_lech",
    "check_mod_p", "check_scalar_extension", "check_sop_estimate", "interchange_table",
]
