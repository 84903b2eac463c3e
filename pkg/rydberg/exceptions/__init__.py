"""Exception hierarchy for entropy computations."""
from rydberg.exceptions.entropy_exceptions import (
    EntropyException,
    DomainError,
    QuantumNumberError,
    GammaPoleError,
    DivergentIntegralError,
    ShannonLimitError,
    ConvergenceError,
    UnknownFigureError,
    SpecFileError,
    EmptyGridError,
)

__all__ = [
    "EntropyException",
    "DomainError",
    "QuantumNumberError",
    "GammaPoleError",
    "DivergentIntegralError",
    "ShannonLimitError",
    "ConvergenceError",
    "UnknownFigureError",
    "SpecFileError",
    "EmptyGridError",
]
