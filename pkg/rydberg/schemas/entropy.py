"""Entropy result, regime and regime-constant models."""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EntropyKind(str, Enum):
    RENYI = "renyi"
    SHANNON = "shannon"
    TSALLIS = "tsallis"


class Method(str, Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asympt"


class RegimeTag(str, Enum):
    COSINE = "cosine"
    COSINE_BESSEL = "cosine-bessel"
    BESSEL = "bessel"
    NOT_APPLICABLE = "n/a"


class ConstantKind(str, Enum):
    COSINE = "cosine"
    BESSEL = "bessel"
    AIRY = "airy"


class EntropyResult(BaseModel):
    """A computed entropy in nats with its provenance tags.

    Shannon results carry p = None; Rényi and Tsallis results never carry p = 1.
    """

    model_config = ConfigDict(frozen=True)

    value: float
    kind: EntropyKind
    p: Optional[float] = None
    method: Method
    regime: RegimeTag = RegimeTag.NOT_APPLICABLE
    error_estimate: float = Field(0.0, ge=0)
    converged: bool = True
    note: str = ""

    @model_validator(mode="after")
    def check_shannon_marker(self) -> "EntropyResult":
        if self.kind == EntropyKind.SHANNON:
            if self.p is not None:
                raise ValueError("Shannon results carry no order p")
        elif self.p is None or self.p == 1.0:
            raise ValueError(f"{self.kind.value} results need an order p ≠ 1")
        return self


class Regime(BaseModel):
    """Asymptotic regime governing the radial norm at order p."""

    model_config = ConfigDict(frozen=True)

    tag: RegimeTag
    p_equal_tolerance: float = 1e-12


class RegimeConstant(BaseModel):
    """One of the constants C(p, β), C_B(α, p, β), C_A(p)."""

    model_config = ConfigDict(frozen=True)

    kind: ConstantKind
    p: float
    alpha: Optional[float] = None
    beta: Optional[float] = None
    value: float
    error_estimate: float = Field(0.0, ge=0)
    converged: bool = True
