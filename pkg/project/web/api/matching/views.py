from fastapi import APIRouter, Depends, HTTPException, Query, status
from starlette.concurrency import run_in_threadpool

from project.db.dependencies import get_word_index
from project.db.storage import WordIndex
from project.exceptions import ChecksumMismatchError, UnknownWordError
from project.services.matching.length import scale_tolerance
from project.services.ranking import Ordering, ScoringOptions, match_word
from project.services.segmentation.words import WordId
from project.settings import settings
from project.web.api.matching.schema import MatchesResponse, MatchRow

router = APIRouter()


@router.get("/words/{word_id:path}/matches", response_model=MatchesResponse)
async def word_matches(
    word_id: str,
    top: int = Query(default=settings.top_k, ge=0),
    ordering: Ordering = Query(default=settings.ordering),
    index: WordIndex = Depends(get_word_index),
) -> MatchesResponse:
    """
    Rank the indexed words against one of them.

    :param word_id: query word as PAGE/LINE/POSITION.
    :param top: rows to return.
    :param ordering: row order, ``ssd`` or ``fused``.
    """
    try:
        query_id = WordId.parse(word_id)
    except ValueError as exc:
        raise HTTPException(status.HTTP_422_UNPROCESSABLE_ENTITY, str(exc)) from exc

    options = ScoringOptions(
        sector_width=index.sector_width,
        noise_floor=index.shape_noise_floor,
        priority=index.shape_priority,
        ulam_max_height=settings.ulam_max_height,
        ulam_max_width=settings.ulam_max_width,
    )
    try:
        query = index.get_block(query_id)
        result = await run_in_threadpool(
            match_word,
            query,
            index,
            top_k=top,
            ordering=ordering,
            tolerance=scale_tolerance(settings.dpi, base=settings.tolerance),
            options=options,
        )
    except UnknownWordError as exc:
        raise HTTPException(status.HTTP_404_NOT_FOUND, str(exc)) from exc
    except ChecksumMismatchError as exc:
        raise HTTPException(status.HTTP_409_CONFLICT, str(exc)) from exc

    return MatchesResponse(
        query=str(result.query_id),
        ordering=result.ordering,
        rows=[
            MatchRow(rank=rank, **row.as_dict())
            for rank, row in enumerate(result.rows, start=1)
        ],
    )
