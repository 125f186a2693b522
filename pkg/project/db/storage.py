"""
Word index files.

An index keeps page checksums and word metadata only. Word bitmaps are
re-cropped from the source pages when a query needs them, after the page
checksum has been checked against the one recorded at build time.
"""

import hashlib
import logging
from functools import partial
from pathlib import Path
from typing import Optional, Sequence, Union

import aiofiles
import ujson
from pydantic import ValidationError

from project.db.models.words import PageRecord, WordIndexDocument, WordRecord
from project.db.repositories.words import PageRepository, WordRepository
from project.exceptions import ChecksumMismatchError, IndexFormatError, WordIndexError
from project.services.imaging.cleanup import despeckle
from project.services.imaging.images import BinaryImage, BoxModel, crop
from project.services.imaging.pnm import load_pnm
from project.services.matching.shape_code import ShapeCode
from project.services.pipeline import ShapeOptions, analyze_page, as_binary
from project.services.segmentation.words import WordBlock, WordId
from project.services.workers import parallel_map

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def checksum(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read_page(path: PathLike) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise WordIndexError(f"cannot read page {path}: {exc.strerror}") from exc


def _index_page(
    numbered_path: tuple[int, str],
    shapes: ShapeOptions,
    min_speck: int,
) -> tuple[PageRecord, list[WordRecord]]:
    page, path = numbered_path
    data = _read_page(path)
    analysis = analyze_page(
        load_pnm(data), page=page, shapes=shapes, min_speck=min_speck,
    )
    record = PageRecord(
        path=path,
        checksum=checksum(data),
        width=analysis.image.width,
        height=analysis.image.height,
    )
    words = [
        WordRecord(
            page=block.word_id.page,
            line=block.word_id.line,
            position=block.word_id.position,
            box=BoxModel.from_box(block.box),
            top_line=block.line_ref.top_line,
            x_line=block.line_ref.x_line,
            baseline=block.line_ref.baseline,
            bottom_line=block.line_ref.bottom_line,
            width=block.width,
            char_count=block.char_count,
            shape_code=str(block.shape_code),
        )
        for block in analysis.all_words
    ]
    return record, words


class WordIndex:
    """Pages and words of an index, with on-demand word bitmaps."""

    def __init__(self, document: WordIndexDocument) -> None:
        self.sector_width = document.sector_width
        self.shape_noise_floor = document.shape_noise_floor
        self.shape_priority = document.shape_priority
        self.min_speck = document.min_speck
        self.pages = PageRepository(document.pages)
        self.words = WordRepository(document.words)
        # page -> (mtime_ns, size) at load time, image
        self._images: dict[int, tuple[tuple[int, int], BinaryImage]] = {}

    def __len__(self) -> int:
        return self.words.count()

    @property
    def document(self) -> WordIndexDocument:
        return WordIndexDocument(
            sector_width=self.sector_width,
            shape_noise_floor=self.shape_noise_floor,
            shape_priority=self.shape_priority,
            min_speck=self.min_speck,
            pages=self.pages.records,
            words=self.words.records,
        )

    def to_json(self) -> str:
        """Index file text; equal indexes give equal text."""
        return (
            ujson.dumps(
                self.document.model_dump(mode="json"),
                indent=2,
                ensure_ascii=False,
                escape_forward_slashes=False,
            )
            + "\n"
        )

    @classmethod
    def from_json(cls, text: str, source: Optional[PathLike] = None) -> "WordIndex":
        """
        Parse and validate index file text.

        :raises IndexFormatError: not JSON or not a valid index.
        """
        where = source or "index"
        try:
            payload = ujson.loads(text)
        except ValueError as exc:
            raise IndexFormatError(f"{where}: not valid JSON ({exc})") from exc
        try:
            document = WordIndexDocument.model_validate(payload)
        except ValidationError as exc:
            raise IndexFormatError(f"{where}: {exc}") from exc
        return cls(document)

    def save(self, path: PathLike) -> None:
        try:
            Path(path).write_text(self.to_json(), encoding="utf-8")
        except OSError as exc:
            raise WordIndexError(f"cannot write index {path}: {exc.strerror}") from exc
        logger.info("wrote %d words over %d pages to %s", len(self), self.pages.count(), path)

    def page_image(self, page: int) -> BinaryImage:
        """
        Source page as a binary image, checked against its recorded checksum.

        The decoded page is cached until the file's modification time or
        size changes; the checksum is verified again on every reload.

        :raises ChecksumMismatchError: the page changed since indexing.
        """
        record = self.pages.records[page]
        try:
            stat = Path(record.path).stat()
        except OSError as exc:
            raise WordIndexError(f"cannot read page {record.path}: {exc.strerror}") from exc
        signature = (stat.st_mtime_ns, stat.st_size)
        cached = self._images.get(page)
        if cached is not None and cached[0] == signature:
            return cached[1]

        data = _read_page(record.path)
        if checksum(data) != record.checksum:
            self._images.pop(page, None)
            raise ChecksumMismatchError(
                f"page {record.path} changed since the index was built",
            )
        image = despeckle(as_binary(load_pnm(data)), self.min_speck)
        self._images[page] = (signature, image)
        return image

    def _block(self, record: WordRecord) -> WordBlock:
        box = record.box.to_box()
        return WordBlock(
            word_id=record.word_id,
            box=box,
            bitmap=crop(self.page_image(record.page), box),
            line_ref=record.line_ref,
            char_count=record.char_count,
            shape_code=ShapeCode(
                record.shape_code,
                self.sector_width,
                self.shape_noise_floor,
                self.shape_priority,
            ),
        )

    def get_block(self, word_id: WordId) -> WordBlock:
        """
        Word block re-cropped from its page.

        :raises UnknownWordError: no such word.
        """
        return self._block(self.words.get(word_id))

    def candidates(self, width: int, tolerance: int) -> list[WordBlock]:
        return [self._block(record) for record in self.words.within_width(width, tolerance)]


def build_index(
    paths: Sequence[PathLike],
    shapes: ShapeOptions = ShapeOptions(),
    min_speck: int = 0,
    jobs: int = 1,
) -> WordIndex:
    """
    Segment every page and collect its words into an index.

    Page numbers follow the order of ``paths``.

    :raises DuplicatePageError: the same path is given twice.
    """
    pages = PageRepository()
    names = [str(path) for path in paths]
    for name in names:
        # placeholder records catch duplicates before any page is processed
        pages.create(path=name, checksum="", width=1, height=1)
    results = parallel_map(
        partial(_index_page, shapes=shapes, min_speck=min_speck),
        list(enumerate(names)),
        jobs,
    )
    document = WordIndexDocument(
        sector_width=shapes.sector_width,
        shape_noise_floor=max(1, shapes.noise_floor),
        shape_priority=shapes.priority,
        min_speck=min_speck,
        pages=[page for page, _ in results],
        words=[word for _, words in results for word in words],
    )
    logger.info("indexed %d words over %d pages", len(document.words), len(document.pages))
    return WordIndex(document)


def load_index(path: PathLike) -> WordIndex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise WordIndexError(f"cannot read index {path}: {exc.strerror}") from exc
    return WordIndex.from_json(text, source=path)


async def load_index_async(path: PathLike) -> WordIndex:
    """Same as ``load_index`` without blocking the event loop on the read."""
    try:
        async with aiofiles.open(path, encoding="utf-8") as index_file:
            text = await index_file.read()
    except OSError as exc:
        raise WordIndexError(f"cannot read index {path}: {exc.strerror}") from exc
    return WordIndex.from_json(text, source=path)
