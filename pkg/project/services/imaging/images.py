from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from project.exceptions import BoundingBoxError


def _frozen(array: NDArray[Any], dtype: Any) -> NDArray[Any]:
    frozen = np.array(array, dtype=dtype, copy=True)
    if frozen.ndim != 2:  # noqa: PLR2004
        raise ValueError(f"image must be two-dimensional, got shape {frozen.shape}")
    if frozen.shape[0] < 1 or frozen.shape[1] < 1:
        raise ValueError(f"image must be at least 1x1, got shape {frozen.shape}")
    frozen.setflags(write=False)
    return frozen


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """
    Bitmap of foreground (True) and background (False) pixels.

    Pixels are stored row-major as a read-only ``(height, width)`` array.
    """

    pixels: NDArray[np.bool_]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pixels", _frozen(self.pixels, np.bool_))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.pixels))

    def transpose(self) -> "BinaryImage":
        return BinaryImage(self.pixels.T)

    def complement(self) -> "BinaryImage":
        return BinaryImage(~self.pixels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self) -> int:
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryImage({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Grey-level image, intensities 0 (black) to 255 (white)."""

    pixels: NDArray[np.uint8]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pixels", _frozen(self.pixels, np.uint8))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self) -> int:
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


Image = Union[BinaryImage, GrayImage]


@dataclass(frozen=True, order=True)
class BoundingBox:
    """Axis-aligned box in pixel coordinates of its parent image."""

    left: int
    top: int
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise BoundingBoxError(
                f"box must be at least 1x1, got {self.width}x{self.height}",
            )
        if self.left < 0 or self.top < 0:
            raise BoundingBoxError(
                f"box origin must be non-negative, got ({self.left}, {self.top})",
            )

    @property
    def right(self) -> int:
        """Exclusive right edge."""
        return self.left + self.width

    @property
    def bottom(self) -> int:
        """Exclusive bottom edge."""
        return self.top + self.height

    def fits(self, width: int, height: int) -> bool:
        return self.right <= width and self.bottom <= height

    def intersects(self, other: "BoundingBox") -> bool:
        return (
            self.left < other.right
            and other.left < self.right
            and self.top < other.bottom
            and other.top < self.bottom
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "left": self.left,
            "top": self.top,
            "width": self.width,
            "height": self.height,
        }


class BoxModel(BaseModel):
    """JSON form of a BoundingBox."""

    left: int = Field(ge=0)
    top: int = Field(ge=0)
    width: int = Field(ge=1)
    height: int = Field(ge=1)

    @classmethod
    def from_box(cls, box: BoundingBox) -> "BoxModel":
        return cls(**box.as_dict())

    def to_box(self) -> BoundingBox:
        return BoundingBox(self.left, self.top, self.width, self.height)


def crop(img: BinaryImage, box: BoundingBox) -> BinaryImage:
    """
    Copy the region under ``box`` into a new image.

    :param img: source image.
    :param box: region, must lie within ``img``.
    :raises BoundingBoxError: if the box exceeds the image.
    :return: image with the box's dimensions.
    """
    if not box.fits(img.width, img.height):
        raise BoundingBoxError(
            f"box {box.as_dict()} exceeds image {img.width}x{img.height}",
        )
    return BinaryImage(img.pixels[box.top : box.bottom, box.left : box.right])
