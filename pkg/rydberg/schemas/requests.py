"""Request bodies of the HTTP API."""
from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from rydberg.schemas.entropy import EntropyKind
from rydberg.schemas.sweep import MethodSelector


class EntropyRequest(BaseModel):
    """Entropies of one state at one or more orders."""

    n: int = Field(..., description="Principal quantum number")
    l: int = Field(0, description="Orbital quantum number")
    m: int = Field(0, description="Magnetic quantum number")
    Z: float = Field(1.0, description="Nuclear charge")
    p: List[float] = Field(default_factory=list, description="Orders; ignored for Shannon")
    kind: EntropyKind = EntropyKind.RENYI
    method: MethodSelector = MethodSelector.EXACT
    form: Literal["auto", "general", "low_l"] = "auto"
    rel_tol: Optional[float] = Field(None, gt=0, description="Relative quadrature tolerance")
    strict: bool = Field(False, description="Answer 422 instead of returning a non-converged value")
