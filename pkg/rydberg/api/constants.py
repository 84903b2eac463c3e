"""Regime constant endpoints."""
from typing import Optional

from fastapi import APIRouter, Depends, Query

from rydberg.config import settings
from rydberg.schemas.entropy import ConstantKind, RegimeConstant
from rydberg.services.entropy_service import EntropyService

router = APIRouter(prefix="/constants", tags=["constants"])


def get_entropy_service(
    rel_tol: Optional[float] = Query(None, gt=0, description="Relative quadrature tolerance")
) -> EntropyService:
    """Dependency injection for EntropyService."""
    return EntropyService(settings.quadrature_config(rel_tol=rel_tol))


@router.get("/cosine", response_model=RegimeConstant)
async def cosine_constant(
    p: float = Query(..., gt=0),
    beta: float = Query(...),
    service: EntropyService = Depends(get_entropy_service)
) -> RegimeConstant:
    """Cosine-regime constant C(p, β); 400 on a gamma pole."""
    return service.constant(ConstantKind.COSINE, p, beta=beta)


@router.get("/bessel", response_model=RegimeConstant)
def bessel_constant(
    alpha: float = Query(..., gt=-1),
    p: float = Query(..., gt=0),
    beta: float = Query(...),
    service: EntropyService = Depends(get_entropy_service)
) -> RegimeConstant:
    """Bessel-regime constant C_B(α, p, β); 400 when the integral diverges."""
    return service.constant(ConstantKind.BESSEL, p, alpha, beta)


@router.get("/airy", response_model=RegimeConstant)
def airy_constant(
    p: float = Query(...),
    service: EntropyService = Depends(get_entropy_service)
) -> RegimeConstant:
    """Airy-regime constant C_A(p); 400 for p ≤ 2."""
    return service.constant(ConstantKind.AIRY, p)
