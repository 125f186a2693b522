"""
Word and character segmentation inside a text line.

White runs of the line's vertical profile are collected in a histogram of
lengths; the mean length is pushed right until a null bin is found, and
runs at least that long separate words. Runs inside a word separate
characters.
"""

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, NamedTuple, Optional

import numpy as np

from project.exceptions import SegmentationError
from project.services.imaging.images import BinaryImage, BoundingBox, crop
from project.services.segmentation.lines import TextLine
from project.services.segmentation.profiles import (
    GapHistogram,
    gap_histogram,
    runs,
    vertical_profile,
)

if TYPE_CHECKING:
    from project.services.matching.shape_code import ShapeCode

logger = logging.getLogger(__name__)


class WordId(NamedTuple):
    """Zero-based page, line and position of a word; sorts in reading order."""

    page: int
    line: int
    position: int

    def __str__(self) -> str:
        return f"{self.page}/{self.line}/{self.position}"

    @classmethod
    def parse(cls, text: str) -> "WordId":
        """
        Parse the ``PAGE/LINE/POSITION`` form.

        :raises ValueError: anything else.
        """
        parts = text.strip().split("/")
        if len(parts) != 3 or not all(part.isdigit() for part in parts):  # noqa: PLR2004
            raise ValueError(f"word id must look like PAGE/LINE/POSITION, got {text!r}")
        return cls(*(int(part) for part in parts))


class LineReference(NamedTuple):
    """Reference rows of the owning line, relative to a word box."""

    top_line: int
    x_line: int
    baseline: int
    bottom_line: int

    def shifted(self, rows: int) -> "LineReference":
        return LineReference(*(row + rows for row in self))


@dataclass(frozen=True)
class WordBlock:
    """A segmented word: where it is, its pixels and its line geometry."""

    word_id: WordId
    box: BoundingBox
    bitmap: BinaryImage
    line_ref: LineReference
    char_count: int
    shape_code: Optional["ShapeCode"] = None

    def __post_init__(self) -> None:
        if (self.bitmap.width, self.bitmap.height) != (self.box.width, self.box.height):
            raise SegmentationError(
                f"bitmap {self.bitmap.width}x{self.bitmap.height} does not match "
                f"box {self.box.width}x{self.box.height}",
            )
        if self.char_count < 1:
            raise SegmentationError(f"word {self.word_id} has no characters")

    @property
    def width(self) -> int:
        return self.box.width

    def as_dict(self) -> dict[str, Any]:
        return {
            "id": str(self.word_id),
            "box": self.box.as_dict(),
            "width": self.width,
            "char_count": self.char_count,
        }


class WordGapThreshold(NamedTuple):
    """Gap length separating words; ``fallback`` marks the midpoint rule."""

    value: int
    fallback: bool


def word_gap_threshold(hist: GapHistogram) -> WordGapThreshold:
    """
    Push the mean gap to the right until a null bin is met.

    The walk starts at the first integer above the mean and moves in unit
    steps up to the longest observed gap. A single gap length means uniform
    spacing, so every gap is a character gap. Otherwise, without a null bin
    the midpoint of the shortest and longest gap is used and flagged.

    :raises SegmentationError: empty histogram.
    """
    if hist.is_empty:
        raise SegmentationError("word gap threshold of an empty histogram")
    for length in range(math.floor(hist.mean_gap) + 1, hist.max_gap + 1):
        if hist.count(length) == 0:
            return WordGapThreshold(length, fallback=False)
    if len(hist.bins) == 1:
        return WordGapThreshold(hist.max_gap + 1, fallback=False)
    midpoint = math.ceil((hist.min_gap + hist.max_gap) / 2)
    logger.warning(
        "no null bin above mean gap %.2f, falling back to %d", hist.mean_gap, midpoint,
    )
    return WordGapThreshold(midpoint, fallback=True)


def count_characters(word: WordBlock) -> int:
    """Runs of inked columns inside the word box."""
    return _character_runs(word.bitmap)


def _character_runs(bitmap: BinaryImage) -> int:
    return len(runs(vertical_profile(bitmap).counts > 0))


def segment_words(
    img: BinaryImage,
    line: TextLine,
    page: int = 0,
    line_index: int = 0,
) -> list[WordBlock]:
    """
    Split a text line into words, left to right.

    Each word box spans its ink columns and the full line band.

    :param img: page the line was found on.
    :param line: line to split.
    :param page: page number for word ids.
    :param line_index: line number for word ids.
    :return: word blocks; empty for a blank line.
    """
    band = line.band
    strip = crop(img, band)
    profile = vertical_profile(strip)
    inked = np.flatnonzero(profile.counts)
    if inked.size == 0:
        return []

    hist = gap_histogram(profile)
    spans: list[tuple[int, int]] = []
    if hist.is_empty:
        spans.append((int(inked[0]), int(inked[-1])))
    else:
        threshold = word_gap_threshold(hist)
        logger.debug(
            "line %d: mean gap %.2f, word gap %d", line_index, hist.mean_gap, threshold.value,
        )
        first = int(inked[0])
        inner = profile.counts[first : int(inked[-1]) + 1]
        start = 0
        for gap_start, gap_end in runs(inner == 0):
            if gap_end - gap_start + 1 >= threshold.value:
                spans.append((first + start, first + gap_start - 1))
                start = gap_end + 1
        spans.append((first + start, int(inked[-1])))

    line_ref = LineReference(
        line.top_line, line.x_line, line.baseline, line.bottom_line,
    ).shifted(-band.top)
    words = []
    for position, (left, right) in enumerate(spans):
        box = BoundingBox(left, band.top, right - left + 1, band.height)
        bitmap = crop(img, box)
        words.append(
            WordBlock(
                word_id=WordId(page, line_index, position),
                box=box,
                bitmap=bitmap,
                line_ref=line_ref,
                char_count=_character_runs(bitmap),
            ),
        )
    return words
