from typing import Any

from fastapi import APIRouter, HTTPException, Request, status
from starlette.concurrency import run_in_threadpool

from project.exceptions import PnmError
from project.services.imaging.pnm import load_pnm
from project.services.pipeline import ShapeOptions, analyze_page
from project.settings import settings

router = APIRouter()


def _segment(data: bytes, dump_profile: bool) -> dict[str, Any]:
    shapes = ShapeOptions(
        sector_width=settings.sector_width,
        noise_floor=settings.shape_noise_floor,
        priority=settings.shape_priority,
    )
    analysis = analyze_page(load_pnm(data), shapes=shapes, min_speck=settings.min_speck)
    return analysis.as_dict(dump_profile)


@router.post("/segment")
async def segment_page(request: Request, dump_profile: bool = False) -> dict[str, Any]:
    """
    Segment an uploaded PNM page.

    The request body is the raw file. The response lists the lines with
    their reference rows and the words of every line.
    """
    data = await request.body()
    try:
        return await run_in_threadpool(_segment, data, dump_profile)
    except PnmError as exc:
        raise HTTPException(status.HTTP_422_UNPROCESSABLE_ENTITY, str(exc)) from exc
