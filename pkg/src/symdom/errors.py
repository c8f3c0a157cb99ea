"""Exception taxonomy shared across modules."""

from __future__ import annotations

from .domains import ParameterError

__all__ = ["ParameterError", "VerificationError", "UnitaryMatchError",
           "ExactCompletionError", "TruncationError"]


class VerificationError(Exception):
    """A residual check failed: the object is not what it claims to be."""


class UnitaryMatchError(VerificationError):
    """Coefficient Grams differ: the two jets are not unitarily equivalent."""


class ExactCompletionError(ArithmeticError):
    """An orthonormalization step needs a square root outside Q(i, sqrt2)."""


class TruncationError(ValueError):
    """The requested truncation degree is too small for the check."""
