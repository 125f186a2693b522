from pydantic import BaseModel, Field, model_validator

from project.services.imaging.images import BoxModel
from project.services.matching.shape_code import ShapePriority
from project.services.segmentation.words import LineReference, WordId

INDEX_FORMAT_VERSION = 1


class PageRecord(BaseModel):
    """A source page of the index."""

    path: str
    checksum: str
    width: int = Field(ge=1)
    height: int = Field(ge=1)


class WordRecord(BaseModel):
    """Word metadata; the bitmap is re-cropped from the page on demand."""

    page: int = Field(ge=0)
    line: int = Field(ge=0)
    position: int = Field(ge=0)
    box: BoxModel
    top_line: int
    x_line: int
    baseline: int
    bottom_line: int
    width: int = Field(ge=1)
    char_count: int = Field(ge=1)
    shape_code: str

    @property
    def word_id(self) -> WordId:
        return WordId(self.page, self.line, self.position)

    @property
    def line_ref(self) -> LineReference:
        return LineReference(self.top_line, self.x_line, self.baseline, self.bottom_line)


class WordIndexDocument(BaseModel):
    """On-disk form of a word index."""

    format_version: int = INDEX_FORMAT_VERSION
    sector_width: int = Field(ge=1)
    shape_noise_floor: int = Field(default=1, ge=1)
    shape_priority: ShapePriority = ShapePriority.ASCENDER
    min_speck: int = Field(default=0, ge=0)
    pages: list[PageRecord] = Field(default_factory=list)
    words: list[WordRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent(self) -> "WordIndexDocument":
        if self.format_version != INDEX_FORMAT_VERSION:
            raise ValueError(f"unsupported index format version {self.format_version}")
        seen: set[WordId] = set()
        for word in self.words:
            if word.word_id in seen:
                raise ValueError(f"duplicate word id {word.word_id}")
            seen.add(word.word_id)
            if word.page >= len(self.pages):
                raise ValueError(f"word {word.word_id} refers to a missing page")
            page = self.pages[word.page]
            if not word.box.to_box().fits(page.width, page.height):
                raise ValueError(f"word {word.word_id} lies outside its page")
        return self
