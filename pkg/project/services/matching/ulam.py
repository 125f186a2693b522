"""
Ordinal correlation of two windows through Ulam's distance.

Both windows are turned into rank matrices (ties ranked in raster order),
the composition permutation maps each rank of the first window to the rank
of the same pixel in the second, and the Ulam distances of that permutation
to the identity and to the reverse identity give two correlations whose
symmetric average lies in [-1, 1].
"""

import logging
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from project.exceptions import MatchingError
from project.services.matching.alignment import align_blocks
from project.services.segmentation.words import WordBlock

logger = logging.getLogger(__name__)

DEFAULT_MAX_HEIGHT = 64
DEFAULT_MAX_WIDTH = 256


@dataclass(frozen=True, eq=False)
class RankMatrix:
    """Ranks 1..n of a window's pixels, laid out like the window."""

    ranks: NDArray[np.int64]

    @property
    def n(self) -> int:
        return int(self.ranks.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankMatrix):
            return NotImplemented
        return bool(np.array_equal(self.ranks, other.ranks))

    def __hash__(self) -> int:
        return hash((self.ranks.shape, self.ranks.tobytes()))


@dataclass(frozen=True)
class UlamResult:
    n: int
    s: tuple[int, ...]
    delta1: int
    delta2: int
    tau_u: float
    tau_r: float

    @property
    def s_reversed(self) -> tuple[int, ...]:
        return self.s[::-1]

    @property
    def tau(self) -> float:
        return (self.tau_u - self.tau_r) / 2


class UlamScore(NamedTuple):
    tau: float
    downsampled: bool


def rank_window(window: ArrayLike) -> RankMatrix:
    """
    Rank intensities ascending; equal intensities rank in raster order.

    :raises MatchingError: empty window.
    """
    values = np.asarray(window)
    if values.size == 0:
        raise MatchingError("cannot rank an empty window")
    order = np.argsort(values, axis=None, kind="stable")
    ranks = np.empty(values.size, dtype=np.int64)
    ranks[order] = np.arange(1, values.size + 1)
    ranks = ranks.reshape(values.shape)
    ranks.setflags(write=False)
    return RankMatrix(ranks)


def composition_permutation(p1: RankMatrix, p2: RankMatrix) -> tuple[int, ...]:
    """
    ``s[i]`` is the rank in ``p2`` of the pixel ranked ``i`` in ``p1``.

    :raises MatchingError: rank matrices of different size.
    """
    if p1.n != p2.n:
        raise MatchingError(f"rank matrices differ in size: {p1.n} != {p2.n}")
    by_rank = np.empty(p1.n, dtype=np.int64)
    by_rank[p1.ranks.ravel() - 1] = p2.ranks.ravel()
    return tuple(int(rank) for rank in by_rank)


def lis_length(s: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence, by patience sorting."""
    piles: list[int] = []
    for value in s:
        pile = bisect_left(piles, value)
        if pile == len(piles):
            piles.append(value)
        else:
            piles[pile] = value
    return len(piles)


def ulam_tau(w1: ArrayLike, w2: ArrayLike) -> UlamResult:
    """
    Ordinal correlation of two equally shaped windows.

    ``delta1 = n - LIS(s)`` and ``delta2 = n - LIS(reversed s)`` are the Ulam
    distances to the identity and reverse identity;
    ``tau_u = 1 - 2 delta1 / (n - 1)``, ``tau_r = 1 - 2 delta2 / (n - 1)``
    and ``tau = (tau_u - tau_r) / 2``.

    :raises MatchingError: shapes differ or fewer than two pixels.
    """
    first = np.asarray(w1)
    second = np.asarray(w2)
    if first.shape != second.shape:
        raise MatchingError(f"window shapes differ: {first.shape} != {second.shape}")
    n = int(first.size)
    if n < 2:  # noqa: PLR2004
        raise MatchingError(f"ulam's distance needs at least 2 pixels, got {n}")

    s = composition_permutation(rank_window(first), rank_window(second))
    delta1 = n - lis_length(s)
    delta2 = n - lis_length(s[::-1])
    return UlamResult(
        n=n,
        s=s,
        delta1=delta1,
        delta2=delta2,
        tau_u=1 - 2 * delta1 / (n - 1),
        tau_r=1 - 2 * delta2 / (n - 1),
    )


def _pool(frame: NDArray[np.bool_], rows: int, cols: int) -> NDArray[np.bool_]:
    """Max-pool ``rows x cols`` blocks; ink anywhere in a block survives."""
    height = math.ceil(frame.shape[0] / rows) * rows
    width = math.ceil(frame.shape[1] / cols) * cols
    padded = np.zeros((height, width), dtype=np.bool_)
    padded[: frame.shape[0], : frame.shape[1]] = frame
    blocks = padded.reshape(height // rows, rows, width // cols, cols)
    return blocks.any(axis=(1, 3))


def ulam_word_similarity(
    a: WordBlock,
    b: WordBlock,
    max_height: int = DEFAULT_MAX_HEIGHT,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> UlamScore:
    """
    Ulam's tau over the aligned frame of two words, taken as one window.

    Frames above ``max_height x max_width`` are max-pooled down to fit and
    the score is flagged as downsampled.
    """
    frame_a, frame_b = align_blocks(a, b)
    pixels_a, pixels_b = frame_a.pixels, frame_b.pixels
    rows = math.ceil(pixels_a.shape[0] / max_height)
    cols = math.ceil(pixels_a.shape[1] / max_width)
    downsampled = rows > 1 or cols > 1
    if downsampled:
        logger.warning(
            "frame %dx%d of %s/%s exceeds ulam cap, pooling by %dx%d",
            pixels_a.shape[1], pixels_a.shape[0], a.word_id, b.word_id, cols, rows,
        )
        pixels_a = _pool(pixels_a, rows, cols)
        pixels_b = _pool(pixels_b, rows, cols)
    if pixels_a.size < 2:  # noqa: PLR2004
        return UlamScore(1.0 if np.array_equal(pixels_a, pixels_b) else -1.0, downsampled)
    return UlamScore(ulam_tau(pixels_a, pixels_b).tau, downsampled)
