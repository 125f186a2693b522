from pathlib import Path

import pytest
from fastapi import FastAPI
from httpx import AsyncClient
from starlette import status

from project.db.dependencies import get_word_index
from project.db.storage import WordIndex
from project.services.imaging.pnm import save_pnm
from project.services.imaging.synthetic import SyntheticPage
from project.settings import settings
from project.web.lifespan import _setup_index


@pytest.mark.anyio
async def test_health(client: AsyncClient, fastapi_app: FastAPI) -> None:
    """
    Checks the health endpoint.

    :param client: client for the app.
    :param fastapi_app: current FastAPI application.
    """
    url = fastapi_app.url_path_for("health_check")
    response = await client.get(url)
    assert response.status_code == status.HTTP_200_OK
    assert response.json() == {"words": None}


@pytest.mark.anyio
async def test_segment(
    client: AsyncClient,
    fastapi_app: FastAPI,
    synthetic_page: SyntheticPage,
) -> None:
    url = fastapi_app.url_path_for("segment_page")
    response = await client.post(url, content=save_pnm(synthetic_page.image))
    assert response.status_code == status.HTTP_200_OK
    payload = response.json()
    assert payload["width"] == synthetic_page.truth.width
    assert [len(line["words"]) for line in payload["lines"]] == [4, 4, 5, 3]
    assert payload["lines"][0]["words"][0]["id"] == "0/0/0"


@pytest.mark.anyio
async def test_segment_rejects_garbage(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("segment_page")
    response = await client.post(url, content=b"P4\n3")
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


@pytest.mark.anyio
async def test_word_matches(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("word_matches", word_id="0/0/1")
    response = await client.get(url, params={"top": 4, "ordering": "fused"})
    assert response.status_code == status.HTTP_200_OK
    payload = response.json()
    assert payload["query"] == "0/0/1"
    assert payload["ordering"] == "fused"
    assert 1 <= len(payload["rows"]) <= 4
    assert payload["rows"][0]["word_id"] == "0/0/1"
    assert payload["rows"][0]["ssd"] == 0
    assert payload["rows"][0]["ssd_rank"] == 1


@pytest.mark.anyio
@pytest.mark.parametrize(
    ("word_id", "expected"),
    [
        ("0/7/7", status.HTTP_404_NOT_FOUND),
        ("zero", status.HTTP_422_UNPROCESSABLE_ENTITY),
    ],
)
async def test_word_matches_errors(
    client: AsyncClient,
    fastapi_app: FastAPI,
    word_id: str,
    expected: int,
) -> None:
    url = fastapi_app.url_path_for("word_matches", word_id=word_id)
    response = await client.get(url)
    assert response.status_code == expected


@pytest.mark.anyio
async def test_changed_page_conflicts(
    client: AsyncClient,
    fastapi_app: FastAPI,
    page_file: Path,
) -> None:
    page_file.write_bytes(b"P1\n1 1\n1\n")
    url = fastapi_app.url_path_for("word_matches", word_id="0/0/0")
    response = await client.get(url)
    assert response.status_code == status.HTTP_409_CONFLICT


@pytest.mark.anyio
async def test_no_index_loaded(client: AsyncClient, fastapi_app: FastAPI) -> None:
    del fastapi_app.dependency_overrides[get_word_index]
    url = fastapi_app.url_path_for("word_matches", word_id="0/0/0")
    response = await client.get(url)
    assert response.status_code == status.HTTP_503_SERVICE_UNAVAILABLE


@pytest.mark.anyio
async def test_index_loaded_at_startup(
    fastapi_app: FastAPI,
    word_index: WordIndex,
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    path = tmp_path / "index.json"
    word_index.save(path)
    monkeypatch.setattr(settings, "index_path", path)
    await _setup_index(fastapi_app)
    assert len(fastapi_app.state.word_index) == len(word_index)

    monkeypatch.setattr(settings, "index_path", None)
    await _setup_index(fastapi_app)
    assert fastapi_app.state.word_index is None
