"""Exception types shared across the package.

Each maps to a CLI exit code (see cli.EXIT_CODES).
"""
from __future__ import annotations


class WalkPolyError(Exception):
    pass


class ValidationError(WalkPolyError):
    """Malformed input: empty step set, duplicate steps, bad bounds."""


class InfiniteFamilyError(ValidationError):
    """The requested class has infinitely many walks of some length.

    Carries a witness loop (sequence of steps of total length 0) when one
    was found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonConvergingError(WalkPolyError):
    """Fixed-point iteration hit its sweep cap without stabilizing."""

    def __init__(self, message, variable=None):
        super().__init__(message)
        self.variable = variable


class BudgetExceededError(WalkPolyError):
    """Elimination S-pair/monomial budget exceeded."""

    def __init__(self, message, basis_size=None):
        super().__init__(message)
        self.basis_size = basis_size


class InsufficientDataError(WalkPolyError):
    """Guessing was fed fewer terms than the ansatz requires."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class ResourceCapError(WalkPolyError):
    """Counting oracle exceeded its cell-update cap; partial table attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class LeadingCoefficientSingularity(WalkPolyError):
    """Recurrence unrolling hit c_r(n) = 0 at a needed index n."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n
