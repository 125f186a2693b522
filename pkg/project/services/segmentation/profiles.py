import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from project.services.imaging.images import BinaryImage


class Axis(str, enum.Enum):
    """Projection direction."""

    HORIZONTAL = "horizontal"  # one value per row
    VERTICAL = "vertical"  # one value per column


@dataclass(frozen=True, eq=False)
class Profile:
    """Foreground pixel counts along one axis of an image."""

    axis: Axis
    counts: NDArray[np.int64]

    def __post_init__(self) -> None:
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if counts.ndim != 1:
            raise ValueError("profile counts must be one-dimensional")
        if counts.size and int(counts.min()) < 0:
            raise ValueError("profile counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return int(self.counts.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return self.axis == other.axis and bool(
            np.array_equal(self.counts, other.counts),
        )

    def __hash__(self) -> int:
        return hash((self.axis, self.counts.tobytes()))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def section(self, start: int, stop: int) -> "Profile":
        return Profile(self.axis, self.counts[start:stop])

    def as_dict(self) -> dict[str, Any]:
        return {"axis": self.axis.value, "counts": self.counts.tolist()}


@dataclass(frozen=True)
class GapHistogram:
    """Occurrences of each white-run length between the first and last ink."""

    bins: dict[int, int] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not self.bins

    @property
    def runs(self) -> int:
        return sum(self.bins.values())

    @property
    def mean_gap(self) -> float:
        if not self.bins:
            return 0.0
        return sum(length * count for length, count in self.bins.items()) / self.runs

    @property
    def min_gap(self) -> int:
        return min(self.bins)

    @property
    def max_gap(self) -> int:
        return max(self.bins)

    def count(self, length: int) -> int:
        """Occurrences of ``length``; absent lengths are null bins."""
        return self.bins.get(length, 0)

    def as_dict(self) -> dict[str, Any]:
        return {
            "bins": {str(length): count for length, count in sorted(self.bins.items())},
            "mean_gap": self.mean_gap,
        }


def runs(mask: NDArray[np.bool_]) -> list[tuple[int, int]]:
    """
    Maximal runs of True values.

    :param mask: one-dimensional boolean array.
    :return: inclusive ``(first, last)`` index pairs in ascending order.
    """
    if mask.size == 0:
        return []
    padded = np.concatenate(([False], mask.astype(np.bool_), [False]))
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    return [(int(start), int(stop) - 1) for start, stop in zip(edges[::2], edges[1::2])]


def horizontal_profile(img: BinaryImage) -> Profile:
    """Foreground count of every row."""
    return Profile(Axis.HORIZONTAL, img.pixels.sum(axis=1))


def vertical_profile(img: BinaryImage) -> Profile:
    """Foreground count of every column."""
    return Profile(Axis.VERTICAL, img.pixels.sum(axis=0))


def mvpl(profile: Profile) -> float:
    """
    Mean value of pixels per line: the arithmetic mean of the counts.

    :raises ValueError: empty profile.
    """
    if not len(profile):
        raise ValueError("mvpl of an empty profile")
    return float(profile.counts.mean())


def gap_histogram(profile: Profile) -> GapHistogram:
    """
    Histogram of white-run lengths strictly inside the inked span.

    Leading and trailing margins are not counted.
    """
    inked = np.flatnonzero(profile.counts)
    if inked.size < 2:  # noqa: PLR2004
        return GapHistogram()
    inner = profile.counts[inked[0] : inked[-1] + 1]
    bins: dict[int, int] = {}
    for first, last in runs(inner == 0):
        length = last - first + 1
        bins[length] = bins.get(length, 0) + 1
    return GapHistogram(dict(sorted(bins.items())))
