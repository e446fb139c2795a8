"""
Exception hierarchy shared by the services.

Discrepancies between counting engines are report content, not errors;
everything here signals either bad input or a broken invariant.
"""


class EnumerationError(Exception):
    """Base class for every error raised by the services."""


class SizeBoundExceeded(EnumerationError, ValueError):
    """A requested size or order is above the configured bound."""

    def __init__(self, what, requested, bound):
        self.what = what
        self.requested = requested
        self.bound = bound
        super().__init__(f"{what} {requested} exceeds the configured bound {bound}")


class InvalidPermutation(EnumerationError, ValueError):
    """Input is not a permutation of 1..n, or an index is out of range."""


class OrientationViolation(EnumerationError, ValueError):
    """phi_inverse met a factor that the orientation's drawing rules forbid."""

    def __init__(self, factor, orientation, reason):
        self.factor = tuple(factor)
        self.orientation = orientation
        self.reason = reason
        rendered = ' '.join(str(v) for v in self.factor)
        super().__init__(f"({rendered}) violates the {orientation} drawing: {reason}")


class InvalidTree(EnumerationError, ValueError):
    """A parent map does not describe a binary increasing tree."""


class PreconditionError(EnumerationError, ValueError):
    """An operation was called outside its domain."""


class SuccessionRuleError(EnumerationError, ArithmeticError):
    """A succession rule produced a negative multiplicity exponent."""


class RecursionIntegrityError(EnumerationError, ArithmeticError):
    """The G_A/G_B step hit an inexact division or a negative coefficient."""
