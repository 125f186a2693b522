"""
Word shape codes over fixed-width sectors.

Each sector of a word image is coded 'A' when it holds ink above the
x-line, 'D' when it holds ink below the baseline and 'x' otherwise.
Working on sectors instead of characters sidesteps broken and touching
characters.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from project.services.segmentation.words import WordBlock

ASCENDER = "A"
XHEIGHT = "x"
DESCENDER = "D"
ALPHABET = frozenset((ASCENDER, XHEIGHT, DESCENDER))
DEFAULT_SECTOR_WIDTH = 15


class ShapePriority(str, enum.Enum):
    """Code of a sector holding both ascender and descender ink."""

    ASCENDER = "A"
    DESCENDER = "D"


@dataclass(frozen=True)
class ShapeCode:
    """Sector letters and the parameters they were computed with."""

    sectors: str
    sector_width: int
    noise_floor: int = 1
    priority: ShapePriority = ShapePriority.ASCENDER

    def __post_init__(self) -> None:
        if self.sector_width < 1:
            raise ValueError(f"sector width must be positive, got {self.sector_width}")
        if set(self.sectors) - ALPHABET:
            raise ValueError(f"shape code {self.sectors!r} uses letters outside A/x/D")

    def made_with(
        self, sector_width: int, noise_floor: int, priority: ShapePriority,
    ) -> bool:
        return (self.sector_width, self.noise_floor, self.priority) == (
            sector_width,
            max(1, noise_floor),
            priority,
        )

    def __str__(self) -> str:
        return self.sectors

    def __len__(self) -> int:
        return len(self.sectors)


def shape_code(
    word: WordBlock,
    sector_width: int = DEFAULT_SECTOR_WIDTH,
    noise_floor: int = 1,
    priority: ShapePriority = ShapePriority.ASCENDER,
) -> ShapeCode:
    """
    Code every ``sector_width`` columns of a word; the last sector may be narrower.

    :param word: word with reference rows in box coordinates.
    :param sector_width: sector width in pixels.
    :param noise_floor: ink pixels a zone needs before it counts.
    :param priority: code of a sector with both ascender and descender ink.
    """
    noise_floor = max(1, noise_floor)
    pixels = word.bitmap.pixels
    above = pixels[: max(0, word.line_ref.x_line), :]
    below = pixels[word.line_ref.baseline + 1 :, :]
    sectors = []
    for index in range(math.ceil(word.width / sector_width)):
        columns = slice(index * sector_width, (index + 1) * sector_width)
        ascends = int(np.count_nonzero(above[:, columns])) >= noise_floor
        descends = int(np.count_nonzero(below[:, columns])) >= noise_floor
        if ascends and descends:
            sectors.append(priority.value)
        elif ascends:
            sectors.append(ASCENDER)
        elif descends:
            sectors.append(DESCENDER)
        else:
            sectors.append(XHEIGHT)
    return ShapeCode("".join(sectors), sector_width, noise_floor, priority)


def shape_mismatch(a: ShapeCode, b: ShapeCode) -> int:
    """Position-wise mismatches over the shorter code plus the length difference."""
    mismatches = sum(left != right for left, right in zip(a.sectors, b.sectors))
    return mismatches + abs(len(a.sectors) - len(b.sectors))
