"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse/usage problems exit 1, resource
caps exit 2, and internal consistency failures exit 3 (loud by design).
"""

from __future__ import annotations


class CohomlenError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(CohomlenError):
    """Operands declare different ambient dimensions."""


class DomainError(CohomlenError):
    """An argument lies outside the operation's domain."""


class ParseError(CohomlenError):
    """DSL input is malformed; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ResourceLimitError(CohomlenError):
    """An enumeration exceeded a configured cap."""


class CertificateError(CohomlenError):
    """A bounding-box certificate could not be validated."""


class ConsistencyError(CohomlenError):
    """An internal invariant failed; results cannot be trusted."""


class FitError(CohomlenError):
    """Quasi-polynomial fitting failed."""


class InsufficientDataError(FitError):
    """Too few sequence values for any fit candidate."""


class NoFitError(FitError):
    """No candidate reproduced the held-out values exactly."""
