"""Entropy API endpoints."""
from typing import List

from fastapi import APIRouter

from rydberg.config import settings
from rydberg.schemas.output import OutputRecord
from rydberg.schemas.requests import EntropyRequest
from rydberg.schemas.state import QuantumState
from rydberg.services.entropy_service import EntropyService

router = APIRouter(prefix="/entropy", tags=["entropy"])


@router.post("", response_model=List[OutputRecord])
def compute_entropy(request: EntropyRequest) -> List[OutputRecord]:
    """Compute entropies of one state.

    Runs in FastAPI's thread pool. A non-converged value comes back flagged,
    or as a 422 when the request is strict.

    Args:
        request: State, orders, entropy kind and method

    Returns:
        One record per order and method

    Raises:
        QuantumNumberError: 400 if the labels do not describe a bound state
        DomainError: 400 if an order is missing or not positive
        ConvergenceError: 422 if the request is strict and a value did not converge
    """
    state = QuantumState.build(request.n, request.l, request.m, request.Z)
    service = EntropyService(settings.quadrature_config(rel_tol=request.rel_tol), form=request.form,
                             strict=request.strict)
    results = service.evaluate_many(state, request.kind, request.p, request.method)
    return [OutputRecord.from_result(state, result) for result in results]
