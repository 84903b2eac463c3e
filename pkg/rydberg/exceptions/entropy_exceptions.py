"""
Entropy computation exception classes.

This module defines a hierarchy of custom exceptions for the numerical library,
providing consistent error handling with machine-readable error codes, CLI exit
codes and HTTP status codes.
"""

from typing import Optional
from datetime import datetime, timezone


class EntropyException(Exception):
    """
    Base exception class for all entropy-computation errors.

    All library exceptions inherit from this class and provide:
    - A human-readable error message
    - A machine-readable error code
    - The CLI exit code and the HTTP status code for the error
    """

    def __init__(
        self,
        message: str,
        error_code: str,
        exit_code: int = 2,
        status_code: int = 400
    ):
        """
        Initialize the exception.

        Args:
            message: Human-readable error description
            error_code: Machine-readable error identifier
            exit_code: Process exit code used by the command-line interface
            status_code: HTTP status code used by the API
        """
        self.message = message
        self.error_code = error_code
        self.exit_code = exit_code
        self.status_code = status_code
        self.timestamp = datetime.now(timezone.utc)
        super().__init__(self.message)

    def to_dict(self) -> dict:
        """Convert exception to dictionary for JSON responses."""
        return {
            "detail": self.message,
            "error_code": self.error_code,
            "timestamp": self.timestamp.isoformat()
        }


class DomainError(EntropyException):
    """Raised when an argument lies outside the domain of an operation."""

    def __init__(
        self,
        message: str = "Argument outside the domain",
        field: Optional[str] = None,
        error_code: str = "DOMAIN_ERROR"
    ):
        if field:
            message = f"Invalid value for '{field}': {message}"
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=2,
            status_code=400
        )


class QuantumNumberError(DomainError):
    """Raised when (n, l, m, Z) violate the hydrogenic quantum-number constraints."""

    def __init__(self, constraint: str):
        super().__init__(message=constraint, error_code="INVALID_QUANTUM_NUMBERS")
        self.constraint = constraint


class GammaPoleError(DomainError):
    """Raised when a gamma factor of the cosine-regime constant sits on a pole."""

    def __init__(self, factor: str, argument: float):
        super().__init__(
            message=f"Gamma pole: {factor} has non-positive argument {argument:g}",
            error_code="GAMMA_POLE"
        )
        self.factor = factor
        self.argument = argument


class DivergentIntegralError(DomainError):
    """Raised when a regime-constant integral diverges at one of its endpoints."""

    def __init__(self, endpoint: str, condition: str):
        super().__init__(
            message=f"Integral diverges at {endpoint}: requires {condition}",
            error_code="DIVERGENT_INTEGRAL"
        )
        self.endpoint = endpoint


class ShannonLimitError(EntropyException):
    """Raised when p = 1 reaches a Rényi or Tsallis path."""

    def __init__(self, operation: str, shannon_operation: str):
        super().__init__(
            message=f"{operation} is undefined at p = 1; use {shannon_operation}",
            error_code="SHANNON_LIMIT",
            exit_code=2,
            status_code=400
        )
        self.shannon_operation = shannon_operation


class ConvergenceError(EntropyException):
    """Raised by strict callers when a quadrature did not meet its tolerance."""

    def __init__(self, message: str = "Quadrature did not converge", error_estimate: Optional[float] = None):
        if error_estimate is not None:
            message = f"{message} (error estimate {error_estimate:.3e})"
        super().__init__(
            message=message,
            error_code="NOT_CONVERGED",
            exit_code=3,
            status_code=422
        )


class UnknownFigureError(EntropyException):
    """Raised for a figure identifier outside {n, p1, p2, z}."""

    def __init__(self, figure_id: str):
        super().__init__(
            message=f"Unknown figure '{figure_id}'; expected one of n, p1, p2, z",
            error_code="UNKNOWN_FIGURE",
            exit_code=2,
            status_code=404
        )


class SpecFileError(EntropyException):
    """Raised when a sweep spec file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        if location:
            message = f"{', '.join(location)}: {message}"
        super().__init__(
            message=message,
            error_code="MALFORMED_SPEC",
            exit_code=2,
            status_code=400
        )
        self.line = line
        self.field = field


class EmptyGridError(EntropyException):
    """Raised when a sweep grid has no points."""

    def __init__(self, axis: Optional[str] = None):
        message = "Sweep grid is empty"
        if axis:
            message = f"Sweep grid is empty: no values for '{axis}'"
        super().__init__(
            message=message,
            error_code="EMPTY_GRID",
            exit_code=2,
            status_code=400
        )
