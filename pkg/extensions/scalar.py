"""
Scalar extension F_p -> F_{p^k} of presented local rings.
"""

from algebra.errors import FieldError
from algebra.field import galois_field


def scalar_extend(quotient, k):
    """
    The same presentation over F_{p^k}.

    Only prime-field rings can be extended (or a ring already over F_{p^k},
    which comes back unchanged).

    Raises:
        FieldError: k < 1, or the ring lives over a different extension.
    """
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    field = quotient.field
    if field.k == k:
        return quotient
    if field.k != 1:
        raise FieldError(f"cannot extend {field} to degree {k} over F_{field.p}")
    return quotient.with_field(galois_field(field.p, k))
