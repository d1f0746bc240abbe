"""Exception taxonomy shared by every module in the package.

Each exception carries a stable ``code`` string (kebab-case) so the command
line tool can map failures to exit codes and report them uniformly.
"""

from __future__ import annotations

__all__ = [
    "RubberTautError",
    "InvalidArgumentError",
    "TruncationExceededError",
    "ResourceLimitError",
    "TheoremViolationError",
    "UnsupportedGraphError",
    "InconsistencyError",
]


class RubberTautError(Exception):
    """Base class for all package-specific errors."""

    code = "error"


class InvalidArgumentError(RubberTautError, ValueError):
    """An argument is outside the documented domain of an operation."""

    code = "invalid-argument"


class TruncationExceededError(RubberTautError):
    """A series coefficient beyond the stored truncation order was requested."""

    code = "truncation-exceeded"


class ResourceLimitError(RubberTautError):
    """An exact computation would exceed the documented size caps."""

    code = "resource-limit"


class TheoremViolationError(RubberTautError):
    """An identity that must hold exactly failed to hold."""

    code = "theorem-violation"


class UnsupportedGraphError(RubberTautError):
    """A fixed-locus shape outside the implemented evaluation catalogue."""

    code = "unsupported-graph"


class InconsistencyError(RubberTautError):
    """An exact linear system has no solution."""

    code = "inconsistency"
