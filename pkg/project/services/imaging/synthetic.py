"""
Synthetic page generator with exact ground truth.

Pages are typeset from the built-in glyph set, one text line per entry of
the spec, and optionally degraded by independent seeded pixel flips.
"""

import logging
from typing import Literal, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from project.exceptions import SyntheticPageError
from project.services.imaging import font
from project.services.imaging.images import BinaryImage, BoundingBox, BoxModel
from project.services.segmentation.words import LineReference, WordBlock, WordId

logger = logging.getLogger(__name__)


class SyntheticPageSpec(BaseModel):
    """Description of a synthetic page, accepted as a JSON document."""

    glyph_set: Literal["builtin"] = font.BUILTIN
    lines: list[str] = Field(default_factory=list)
    char_gap: int = Field(default=2, ge=0)
    word_gap: int = Field(default=10, ge=1)
    line_gap: int = Field(default=8, ge=0)
    noise: float = Field(default=0.0, ge=0.0, lt=0.5)
    seed: int = 0
    scale: int = Field(default=2, ge=1)
    margin: int = Field(default=10, ge=0)
    page_width: Optional[int] = Field(default=None, ge=1)

    @field_validator("lines")
    @classmethod
    def _lines_have_words(cls, lines: list[str]) -> list[str]:
        for number, line in enumerate(lines):
            if not line.split():
                raise ValueError(f"line {number} has no words")
            unknown = set(line.replace(" ", "")) - set(font.CHARSET)
            if unknown:
                raise ValueError(
                    f"line {number} uses characters outside the glyph set: "
                    f"{''.join(sorted(unknown))!r}",
                )
        return lines

    @model_validator(mode="after")
    def _word_gap_exceeds_char_gap(self) -> "SyntheticPageSpec":
        if self.word_gap <= self.char_gap:
            raise ValueError(
                f"word_gap ({self.word_gap}) must exceed char_gap ({self.char_gap})",
            )
        return self

    @property
    def words(self) -> list[list[str]]:
        return [line.split() for line in self.lines]

    def line_width(self, words: list[str]) -> int:
        widths = [font.word_width(word, self.scale, self.char_gap) for word in words]
        return sum(widths) + self.word_gap * (len(widths) - 1)


class WordTruth(BaseModel):
    text: str
    box: BoxModel
    char_count: int


class LineTruth(BaseModel):
    box: BoxModel
    words: list[WordTruth]


class GroundTruth(BaseModel):
    """Exact geometry of a rendered page."""

    width: int
    height: int
    lines: list[LineTruth]

    def word_count(self) -> int:
        return sum(len(line.words) for line in self.lines)


class SyntheticPage(NamedTuple):
    image: BinaryImage
    truth: GroundTruth


def _page_size(spec: SyntheticPageSpec) -> tuple[int, int]:
    line_height = font.GLYPH_HEIGHT * spec.scale
    widest = max((spec.line_width(words) for words in spec.words), default=0)
    width = spec.page_width or max(1, widest + 2 * spec.margin)
    for words in spec.words:
        for word in words:
            if font.word_width(word, spec.scale, spec.char_gap) + 2 * spec.margin > width:
                raise SyntheticPageError(f"word {word!r} too wide for page width {width}")
        if spec.line_width(words) + 2 * spec.margin > width:
            raise SyntheticPageError(
                f"line {' '.join(words)!r} too wide for page width {width}",
            )
    count = len(spec.lines)
    height = 2 * spec.margin + count * line_height + max(0, count - 1) * spec.line_gap
    return width, max(1, height)


def render_synthetic_page(spec: SyntheticPageSpec) -> SyntheticPage:
    """
    Typeset a page and record the geometry of every line and word.

    Line boxes span the typeset text horizontally and the glyph cell
    vertically; word boxes span their glyphs and the same rows.

    :param spec: validated page description.
    :raises SyntheticPageError: a word or line wider than the page.
    :return: page image and its ground truth.
    """
    width, height = _page_size(spec)
    canvas = np.zeros((height, width), dtype=np.bool_)
    line_height = font.GLYPH_HEIGHT * spec.scale

    lines: list[LineTruth] = []
    top = spec.margin
    for words in spec.words:
        x = spec.margin
        truths: list[WordTruth] = []
        for word in words:
            bitmap = font.render_text(word, spec.scale, spec.char_gap)
            canvas[top : top + line_height, x : x + bitmap.shape[1]] = bitmap
            box = BoundingBox(x, top, bitmap.shape[1], line_height)
            truths.append(
                WordTruth(text=word, box=BoxModel.from_box(box), char_count=len(word)),
            )
            x += bitmap.shape[1] + spec.word_gap
        line_box = BoundingBox(spec.margin, top, spec.line_width(words), line_height)
        lines.append(LineTruth(box=BoxModel.from_box(line_box), words=truths))
        top += line_height + spec.line_gap

    if spec.noise > 0:
        rng = np.random.default_rng(spec.seed)
        flips = rng.random(canvas.shape) < spec.noise
        canvas ^= flips
        logger.debug("flipped %d pixels", int(flips.sum()))

    truth = GroundTruth(width=width, height=height, lines=lines)
    return SyntheticPage(BinaryImage(canvas), truth)


def render_word_block(
    text: str,
    word_id: WordId = WordId(0, 0, 0),
    scale: int = 2,
    char_gap: int = 2,
) -> WordBlock:
    """
    Render one word straight into a WordBlock.

    Reference rows come from the glyph geometry, not from segmentation.
    """
    bitmap = font.render_text(text, scale, char_gap)
    if bitmap.shape[1] == 0:
        raise SyntheticPageError("cannot render an empty word")
    return WordBlock(
        word_id=word_id,
        box=BoundingBox(0, 0, bitmap.shape[1], bitmap.shape[0]),
        bitmap=BinaryImage(bitmap),
        line_ref=LineReference(*font.reference_rows(scale)),
        char_count=len(text),
    )
