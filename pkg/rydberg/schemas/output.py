"""Output records shared by the CSV / json-lines writers, sweeps and the API."""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from rydberg.schemas.entropy import EntropyResult
from rydberg.schemas.state import QuantumState

# Column order of the CSV header
RECORD_FIELDS = ("n", "l", "m", "Z", "p", "kind", "method", "regime", "value", "error", "note")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSONL = "jsonl"


class OutputRecord(BaseModel):
    """One entropy value as written to CSV, json-lines or returned over HTTP."""

    n: int
    l: int
    m: int
    Z: float
    p: Optional[float] = None
    kind: str
    method: str
    regime: str
    value: Optional[float] = None
    error: Optional[float] = None
    note: str = ""

    @classmethod
    def from_result(cls, state: QuantumState, result: EntropyResult, note: str = "") -> "OutputRecord":
        """Flatten a state and its entropy result into a record."""
        notes = [text for text in (result.note, note) if text]
        if not result.converged:
            notes.append("not converged")
        return cls(
            n=state.n,
            l=state.l,
            m=state.m,
            Z=state.Z,
            p=result.p,
            kind=result.kind.value,
            method=result.method.value,
            regime=result.regime.value,
            value=result.value,
            error=result.error_estimate,
            note="; ".join(notes),
        )


class SweepRow(OutputRecord):
    """An output record plus the wall time spent computing it."""

    wall_time: float = Field(0.0, ge=0)
    converged: bool = True
