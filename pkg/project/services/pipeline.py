import logging
from dataclasses import dataclass, field, replace
from typing import Any

from project.services.imaging.binarize import AUTO, binarize
from project.services.imaging.cleanup import despeckle
from project.services.imaging.images import BinaryImage, GrayImage, Image, crop
from project.services.matching.shape_code import (
    DEFAULT_SECTOR_WIDTH,
    ShapePriority,
    shape_code,
)
from project.services.segmentation.lines import TextLine, segment_lines
from project.services.segmentation.profiles import (
    gap_histogram,
    horizontal_profile,
    vertical_profile,
)
from project.services.segmentation.words import WordBlock, segment_words

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShapeOptions:
    sector_width: int = DEFAULT_SECTOR_WIDTH
    noise_floor: int = 1
    priority: ShapePriority = ShapePriority.ASCENDER


@dataclass(frozen=True)
class PageAnalysis:
    """Lines of a page and the words of each line."""

    page: int
    image: BinaryImage
    lines: list[TextLine]
    words: list[list[WordBlock]] = field(default_factory=list)

    @property
    def all_words(self) -> list[WordBlock]:
        return [word for line in self.words for word in line]

    def as_dict(self, dump_profile: bool = False) -> dict[str, Any]:
        lines = []
        for line, words in zip(self.lines, self.words):
            entry = line.as_dict()
            entry["words"] = [
                {**word.as_dict(), "shape_code": str(word.shape_code)} for word in words
            ]
            if dump_profile:
                profile = vertical_profile(crop(self.image, line.band))
                entry["profile"] = profile.as_dict()
                entry["gap_histogram"] = gap_histogram(profile).as_dict()
            lines.append(entry)
        page: dict[str, Any] = {
            "width": self.image.width,
            "height": self.image.height,
            "lines": lines,
        }
        if dump_profile:
            page["profile"] = horizontal_profile(self.image).as_dict()
        return page


def as_binary(img: Image) -> BinaryImage:
    """Binary pages pass through; grey pages are thresholded with Otsu."""
    if isinstance(img, GrayImage):
        return binarize(img, AUTO)
    return img


def analyze_page(
    img: Image,
    page: int = 0,
    shapes: ShapeOptions = ShapeOptions(),
    min_speck: int = 0,
) -> PageAnalysis:
    """
    Segment a page into lines and words and code every word's shape.

    :param img: page image; grey pages are binarized first.
    :param page: page number used in word ids.
    :param shapes: shape-code parameters.
    :param min_speck: components smaller than this are removed first; 0 keeps all.
    """
    binary = despeckle(as_binary(img), min_speck)
    lines = segment_lines(binary)
    words = []
    for line_index, line in enumerate(lines):
        blocks = segment_words(binary, line, page=page, line_index=line_index)
        words.append(
            [
                replace(
                    block,
                    shape_code=shape_code(
                        block, shapes.sector_width, shapes.noise_floor, shapes.priority,
                    ),
                )
                for block in blocks
            ],
        )
    logger.info(
        "page %d: %d lines, %d words", page, len(lines), sum(len(line) for line in words),
    )
    return PageAnalysis(page=page, image=binary, lines=lines, words=words)
