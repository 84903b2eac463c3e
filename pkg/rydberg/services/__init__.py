"""Numerical services."""
from .entropy_service import EntropyService

__all__ = ["EntropyService"]
