from fastapi import HTTPException, status
from starlette.requests import Request

from project.db.storage import WordIndex


def get_word_index(request: Request) -> WordIndex:
    """
    Get the word index loaded at startup.

    :param request: current request.
    :raises HTTPException: 503 when no index is configured.
    :return: word index.
    """
    index = getattr(request.app.state, "word_index", None)
    if index is None:
        raise HTTPException(
            status_code=status.HTTP_503_SERVICE_UNAVAILABLE,
            detail="no word index is loaded",
        )
    return index
