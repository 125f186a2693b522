from typing import Any

from fastapi import APIRouter, Request

router = APIRouter()


@router.get("/health")
def health_check(request: Request) -> dict[str, Any]:
    """
    Checks the health of the service.

    It returns 200 whenever the service runs, with the size of the loaded
    word index; ``words`` is null when no index is loaded.
    """
    index = getattr(request.app.state, "word_index", None)
    return {"words": None if index is None else len(index)}
