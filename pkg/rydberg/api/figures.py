"""Figure data endpoints."""
from fastapi import APIRouter, Query

from rydberg.config import settings
from rydberg.schemas.sweep import MethodSelector, SweepTable
from rydberg.services import bench

router = APIRouter(prefix="/figures", tags=["figures"])


@router.get("/{figure_id}", response_model=SweepTable)
def figure_data(
    figure_id: str,
    method: MethodSelector = Query(MethodSelector.ASYMPTOTIC, description="exact, asympt or both")
) -> SweepTable:
    """Sweep table behind one figure (n, p1, p2 or z).

    Raises:
        UnknownFigureError: 404 for any other figure id
    """
    return bench.figure_data(figure_id, method, settings.quadrature_config())
