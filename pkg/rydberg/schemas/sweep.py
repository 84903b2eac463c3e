"""Sweep specification and table models."""
from datetime import datetime, timezone
from enum import Enum
from itertools import product
from typing import Iterator, List, Optional, Tuple
import hashlib
import json

from pydantic import BaseModel, ConfigDict, Field

from rydberg import __version__
from rydberg.schemas.entropy import EntropyKind
from rydberg.schemas.output import SweepRow
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import QuantumState, quantum_number_violation


class MethodSelector(str, Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asympt"
    BOTH = "both"


class SweepSpec(BaseModel):
    """Grid over (n, l, m, Z, p) with a method selector.

    Combinations violating the quantum-number constraints are not grid points;
    p = 1 entries are served by the Shannon operations and the p axis is
    ignored for kind = shannon.
    """

    model_config = ConfigDict(frozen=True)

    n: List[int]
    l: List[int] = Field(default_factory=lambda: [0])
    m: List[int] = Field(default_factory=lambda: [0])
    Z: List[float] = Field(default_factory=lambda: [1.0])
    p: List[float] = Field(default_factory=lambda: [1.0])
    kind: EntropyKind = EntropyKind.RENYI
    method: MethodSelector = MethodSelector.EXACT
    cfg: QuadratureConfig = Field(default_factory=QuadratureConfig)

    def states(self) -> List[QuantumState]:
        """Valid states of the grid in (n, l, m, Z) lexicographic order."""
        return [
            QuantumState(n=n, l=l, m=m, Z=Z)
            for n, l, m, Z in product(self.n, self.l, self.m, self.Z)
            if quantum_number_violation(n, l, m, Z) is None
        ]

    def points(self) -> Iterator[Tuple[QuantumState, Optional[float]]]:
        """Grid points (state, p) in deterministic order.

        A Shannon sweep has one point per state, with p = None.
        """
        orders = [None] if self.kind == EntropyKind.SHANNON else self.p
        for state in self.states():
            for p in orders:
                yield state, p

    def grid_hash(self) -> str:
        """sha256 over the grid and the quadrature configuration."""
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Provenance(BaseModel):
    version: str = __version__
    config_hash: str
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))


class SweepTable(BaseModel):
    """Rows of a sweep, one per grid point and method, in grid order."""

    rows: List[SweepRow]
    provenance: Provenance
    title: Optional[str] = None


class ConvergenceRow(BaseModel):
    n: int
    error: float
    ratio: Optional[float] = None


class ConvergenceSeries(BaseModel):
    """|exact − asymptotic| along n for one (l, m, Z, p, kind) series."""

    l: int
    m: int
    Z: float
    p: Optional[float] = None
    kind: str
    rows: List[ConvergenceRow]
    slope: Optional[float] = None

    @property
    def strictly_decreasing(self) -> bool:
        errors = [row.error for row in self.rows]
        return all(later < earlier for earlier, later in zip(errors, errors[1:]))


class TransitionSequence(BaseModel):
    """N_{n,0}(2)·π²(n−1)/ln(n−1) along n with successive ratios."""

    n: List[int]
    values: List[float]
    ratios: List[float]
    converged: bool = True


class MonotonicityCheck(BaseModel):
    """Trend check of one series of a table along one axis."""

    series: str
    axis: str
    trend: str
    holds: bool
    violations: List[int] = Field(default_factory=list)
