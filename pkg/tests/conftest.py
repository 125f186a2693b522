import logging
import random
from pathlib import Path
from typing import Any, AsyncGenerator, Callable, Generator, List

import pytest
from fastapi import FastAPI
from httpx import ASGITransport, AsyncClient

from project.db.dependencies import get_word_index
from project.db.storage import WordIndex, build_index
from project.services.imaging.font import CHARSET
from project.services.imaging.pnm import save_pnm
from project.services.imaging.synthetic import (
    SyntheticPage,
    SyntheticPageSpec,
    render_synthetic_page,
)
from project.web.application import get_app

PageWriter = Callable[..., Path]


@pytest.fixture(scope="session")
def anyio_backend() -> str:
    """
    Backend for anyio pytest plugin.

    :return: backend name.
    """
    return "asyncio"


@pytest.fixture
def _restore_logging() -> Generator[None, None, None]:
    """Undo the root handler swap done by ``configure_logging``."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def random_words() -> Callable[[random.Random, int], List[str]]:
    """Factory of words of 2 to 6 letters drawn from the whole glyph set."""

    def make(rng: random.Random, count: int) -> List[str]:
        return [
            "".join(rng.choice(CHARSET) for _ in range(rng.randint(2, 6)))
            for _ in range(count)
        ]

    return make


@pytest.fixture
def page_spec() -> SyntheticPageSpec:
    return SyntheticPageSpec(
        lines=[
            "some men run over",
            "more snow was near",
            "one can see our zoo",
            "new canoe race",
        ],
    )


@pytest.fixture
def synthetic_page(page_spec: SyntheticPageSpec) -> SyntheticPage:
    return render_synthetic_page(page_spec)


@pytest.fixture
def write_page(tmp_path: Path) -> PageWriter:
    """Factory rendering a spec into ``<tmp>/<name>.pbm``."""

    def write(spec: SyntheticPageSpec, name: str = "page") -> Path:
        path = tmp_path / f"{name}.pbm"
        path.write_bytes(save_pnm(render_synthetic_page(spec).image))
        return path

    return write


@pytest.fixture
def page_file(write_page: PageWriter, page_spec: SyntheticPageSpec) -> Path:
    return write_page(page_spec)


@pytest.fixture
def word_index(page_file: Path) -> WordIndex:
    return build_index([page_file])


@pytest.fixture
def fastapi_app(
    word_index: WordIndex,
) -> FastAPI:
    """
    Fixture for creating FastAPI app.

    :return: fastapi app with mocked dependencies.
    """
    application = get_app()
    application.dependency_overrides[get_word_index] = lambda: word_index
    return application


@pytest.fixture
async def client(
    fastapi_app: FastAPI,
    anyio_backend: Any,
) -> AsyncGenerator[AsyncClient, None]:
    """
    Fixture that creates client for requesting server.

    :param fastapi_app: the application.
    :yield: client for the app.
    """
    transport = ASGITransport(app=fastapi_app)
    async with AsyncClient(transport=transport, base_url="http://test", timeout=2.0) as ac:
        yield ac
