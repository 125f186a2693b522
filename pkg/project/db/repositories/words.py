from typing import Any, List, Type

from project.db.models.words import PageRecord, WordRecord
from project.db.repositories.base import BaseRepository
from project.exceptions import DuplicatePageError, UnknownWordError
from project.services.segmentation.words import WordId


class PageRepository(BaseRepository[PageRecord]):
    @property
    def model(self) -> Type[PageRecord]:
        return PageRecord

    def create(self, **kwargs: Any) -> PageRecord:
        if self.find_first(path=kwargs.get("path")) is not None:
            raise DuplicatePageError(f"duplicate page path: {kwargs.get('path')}")
        return super().create(**kwargs)


class WordRepository(BaseRepository[WordRecord]):
    @property
    def model(self) -> Type[WordRecord]:
        return WordRecord

    def get(self, word_id: WordId) -> WordRecord:
        """
        Word by id.

        :raises UnknownWordError: no such word.
        """
        record = self.find_one_by(
            page=word_id.page, line=word_id.line, position=word_id.position,
        )
        if record is None:
            raise UnknownWordError(f"word {word_id} is not in the index")
        return record

    def within_width(self, width: int, tolerance: int) -> List[WordRecord]:
        """Words whose width is within ``tolerance`` of ``width``, in id order."""
        return self.find_all_by(
            order_by=lambda record: record.word_id,
            width__gte=width - tolerance,
            width__lte=width + tolerance,
        )
