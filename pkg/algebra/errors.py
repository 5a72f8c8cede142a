"""
Exception types shared by every layer of the algebra stack.

Module-specific errors (parser diagnostics, failed peel searches, ...) live
next to the code that raises them and subclass one of these.
"""


class AlgebraError(Exception):
    """Base class for every error raised by the computational kernel."""


class StructuralError(AlgebraError):
    """Operands live in different rings or over different fields."""


class FieldError(AlgebraError, ValueError):
    """Invalid field parameters (non-prime characteristic, reducible modulus, ...)."""


class NotLocalError(AlgebraError):
    """A relation or map image has a nonzero constant term at the origin."""


class InfiniteLengthError(AlgebraError):
    """A length that the caller needs finite came back infinite."""


class ResourceCapError(AlgebraError):
    """
    A configured cap (degree, t or e) was hit before the computation finished.

    Args:
        message (str): Human readable description of the cap that was hit.
        cap (str): Name of the cap, e.g. "DEGREE_CAP".
        partial (object): Whatever was computed before stopping, if anything.
    """

    def __init__(self, message, cap=None, partial=None):
        super().__init__(message)
        self.cap = cap
        self.partial = partial
