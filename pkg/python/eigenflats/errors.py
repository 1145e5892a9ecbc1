"""Unified error types.

Every error raised by the library derives from :class:`EigenflatsError` and
carries the process exit code the command line maps it to.
"""

from __future__ import annotations

from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_THEOREM = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class EigenflatsError(Exception):
    """Base class for all eigenflats errors."""

    exit_code = EXIT_USAGE


class ConfigError(EigenflatsError):
    """Malformed environment or command-line configuration."""


class FieldError(EigenflatsError):
    """Invalid operation on cyclotomic scalars."""


class DivisionByZero(FieldError, ZeroDivisionError):
    """Inverse of the zero element requested."""


class ConductorMismatch(FieldError):
    """Operands live in different cyclotomic fields."""

    def __init__(self, left: int, right: int) -> None:
        super().__init__(f"conductor mismatch: Q(z{left}) vs Q(z{right}); lift first")
        self.left = left
        self.right = right


class DimensionMismatch(EigenflatsError, ValueError):
    """Shapes of matrices, vectors or subspaces do not agree."""


class LiteralParseError(EigenflatsError, ValueError):
    """Scalar literal does not follow the `p/q`, `zN`, `+ - * ^ ( )` grammar."""


class UnsupportedType(EigenflatsError):
    """Type label outside the admissible families and ranks."""


class GroupTooLarge(EigenflatsError):
    """Group order exceeds the configured enumeration cap."""

    exit_code = EXIT_RESOURCE

    def __init__(self, label: str, required: int, cap: int) -> None:
        super().__init__(f"{label}: |W| = {required} exceeds cap {cap}")
        self.label = label
        self.required = required
        self.cap = cap


class ZeroVector(EigenflatsError, ValueError):
    """The zero vector was passed where an eigenvector is required."""


class EmptyEigenspace(EigenflatsError, ValueError):
    """Flat search requested on the zero subspace."""


class PreconditionError(EigenflatsError, ValueError):
    """Operation called outside its precondition."""


class QuadraticOnly(EigenflatsError):
    """Only the quadratic invariant is available for this type."""


class NotCoprime(EigenflatsError, ValueError):
    """Laurent exponent a/b is not in lowest terms."""


class ZeroLeadingTerm(EigenflatsError, ValueError):
    """Laurent leading coefficient is zero."""


class LeadingTermError(EigenflatsError, ValueError):
    """Laurent leading-term document is malformed."""


class ConsistencyError(EigenflatsError):
    """A static table disagrees with the computed structure."""

    exit_code = EXIT_THEOREM


class TheoremViolation(EigenflatsError):
    """A verified statement failed; carries the counterexample."""

    exit_code = EXIT_THEOREM

    def __init__(self, message: str, counterexample: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.counterexample = counterexample or {}
