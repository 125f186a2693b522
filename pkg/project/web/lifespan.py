import logging
from contextlib import asynccontextmanager
from typing import AsyncGenerator

from fastapi import FastAPI

from project.db.storage import load_index_async
from project.log import configure_logging
from project.settings import settings

logger = logging.getLogger(__name__)


async def _setup_index(app: FastAPI) -> None:
    """
    Load the word index named in the settings.

    The index is kept in the application's state; without a configured
    path the matching endpoints answer 503.

    :param app: fastAPI application.
    """
    app.state.word_index = None
    if settings.index_path is None:
        logger.warning("no index configured, matching is unavailable")
        return
    app.state.word_index = await load_index_async(settings.index_path)
    logger.info("serving %d words from %s", len(app.state.word_index), settings.index_path)


@asynccontextmanager
async def lifespan_setup(
    app: FastAPI,
) -> AsyncGenerator[None, None]:  # pragma: no cover
    """
    Actions to run on application startup.

    This function uses fastAPI app to store data
    in the state, such as the word index.

    :param app: the fastAPI application.
    :return: function that actually performs actions.
    """
    configure_logging(settings.log_level)
    await _setup_index(app)

    yield
    app.state.word_index = None
