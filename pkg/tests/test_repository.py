import pytest

from project.db.models.words import PageRecord, WordRecord
from project.db.repositories import PageRepository, WordRepository
from project.exceptions import DuplicatePageError, UnknownWordError
from project.services.imaging.images import BoxModel
from project.services.segmentation.words import WordId


def _word(page: int, line: int, position: int, width: int) -> WordRecord:
    return WordRecord(
        page=page,
        line=line,
        position=position,
        box=BoxModel(left=0, top=0, width=width, height=10),
        top_line=0,
        x_line=3,
        baseline=6,
        bottom_line=9,
        width=width,
        char_count=1,
        shape_code="x",
    )


@pytest.fixture
def words() -> WordRepository:
    return WordRepository(
        [_word(0, 1, 0, 40), _word(0, 0, 1, 55), _word(0, 0, 0, 50), _word(1, 0, 0, 61)],
    )


def test_get_by_id(words: WordRepository) -> None:
    assert words.get(WordId(0, 0, 1)).width == 55
    with pytest.raises(UnknownWordError):
        words.get(WordId(2, 0, 0))


def test_within_width_in_id_order(words: WordRepository) -> None:
    found = words.within_width(55, 5)
    assert [record.word_id for record in found] == [WordId(0, 0, 0), WordId(0, 0, 1)]
    assert words.within_width(55, 0)[0].word_id == WordId(0, 0, 1)
    assert words.within_width(100, 10) == []


def test_filters(words: WordRepository) -> None:
    assert words.count() == 4
    assert words.count(page=0) == 3
    assert words.count(line__in=[1]) == 1
    assert words.find_first(page=1).width == 61
    assert words.find_one_by(page=9) is None
    with pytest.raises(LookupError):
        words.find_one_by(page=0)


def test_paging(words: WordRepository) -> None:
    ordered = words.find_all_by(order_by=lambda record: record.width, offset=1, limit=2)
    assert [record.width for record in ordered] == [50, 55]


def test_duplicate_page() -> None:
    pages = PageRepository()
    record = pages.create(path="a.pbm", checksum="00", width=2, height=2)
    assert isinstance(record, PageRecord)
    with pytest.raises(DuplicatePageError):
        pages.create(path="a.pbm", checksum="11", width=2, height=2)
