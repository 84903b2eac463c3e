"""Quadrature configuration and result models."""
import hashlib

from pydantic import BaseModel, ConfigDict, Field


class QuadratureConfig(BaseModel):
    """Tolerances and limits for the adaptive quadrature engine.

    The error contract: a converged integral satisfies
    abs_error_estimate <= max(rel_tol * |value|, abs_tol).
    """

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(1e-10, gt=0, description="Relative tolerance")
    abs_tol: float = Field(1e-14, gt=0, description="Absolute tolerance")
    panel_order: int = Field(31, ge=2, description="Gauss-Legendre points per panel")
    max_depth: int = Field(40, ge=1, description="Maximum bisection depth of any panel")
    max_panels: int = Field(20000, ge=1, description="Global cap on adaptive panels")
    tail_growth: float = Field(2.0, gt=1, description="Geometric growth of tail panel widths")
    tail_stop: float = Field(1e-16, gt=0, description="Relative contribution that ends a tail")

    def tolerance(self, value: float) -> float:
        """Absolute error target for an integral of the given magnitude."""
        return max(self.rel_tol * abs(value), self.abs_tol)

    def config_hash(self) -> str:
        """Stable sha256 of the canonical JSON form (sweep provenance)."""
        return hashlib.sha256(self.model_dump_json().encode("utf-8")).hexdigest()


class IntegralResult(BaseModel):
    """Value and error bookkeeping of one quadrature."""

    model_config = ConfigDict(frozen=True)

    value: float
    abs_error_estimate: float = Field(..., ge=0)
    panels_used: int = Field(..., ge=0)
    converged: bool

    @property
    def relative_error(self) -> float:
        """Error estimate relative to |value| (inf for a zero value with nonzero error)."""
        if self.value == 0.0:
            return 0.0 if self.abs_error_estimate == 0.0 else float("inf")
        return self.abs_error_estimate / abs(self.value)

    def scaled(self, factor: float) -> "IntegralResult":
        """Result of integrating factor * f, given the result for f."""
        return IntegralResult(
            value=factor * self.value,
            abs_error_estimate=abs(factor) * self.abs_error_estimate,
            panels_used=self.panels_used,
            converged=self.converged,
        )
