"""
Text line extraction from the horizontal projection profile.

Rows whose count reaches the mean value of pixels per line (mvpl) are
"full"; maximal runs of full rows are line candidates. Candidates inside
one ink block (maximal run of non-empty rows) are joined first, so a line
whose sparse rows dip under the threshold still votes as one. Rows left
uncovered by the detected lines are searched again with a local mvpl
to recover shorter lines, and candidates whose height departs more than
50% from the majority height are voted out.
"""

import logging
import math
import statistics
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

import numpy as np

from project.exceptions import SegmentationError
from project.services.imaging.images import BinaryImage, BoundingBox, crop
from project.services.segmentation.profiles import (
    Profile,
    horizontal_profile,
    mvpl,
    runs,
)

logger = logging.getLogger(__name__)

DISCARD_RATIO = 0.5
CLUSTER_RATIO = 1.25
MAX_RECURSION_DEPTH = 2
MIN_REFERENCE_ROWS = 4
MIN_BAND_ROWS = 2


@dataclass(frozen=True, order=True)
class LineCandidate:
    """Run of consecutive rows, bounds inclusive."""

    first_row: int
    last_row: int

    def __post_init__(self) -> None:
        if self.first_row > self.last_row:
            raise SegmentationError(
                f"candidate rows out of order: {self.first_row} > {self.last_row}",
            )

    @property
    def height(self) -> int:
        return self.last_row - self.first_row + 1


@dataclass(frozen=True)
class TextLine:
    """
    A text line with its four reference rows in page coordinates.

    ``clamped`` is set when top or bottom line had to be pulled inside the
    band; the spacing identity then holds for x-line and baseline only.
    """

    band: BoundingBox
    top_line: int
    x_line: int
    baseline: int
    bottom_line: int
    k: float
    clamped: bool = False

    def __post_init__(self) -> None:
        if not self.top_line <= self.x_line < self.baseline <= self.bottom_line:
            raise SegmentationError(
                "reference rows out of order: "
                f"{self.top_line}, {self.x_line}, {self.baseline}, {self.bottom_line}",
            )

    def as_dict(self) -> dict[str, Any]:
        return {
            "band": self.band.as_dict(),
            "top_line": self.top_line,
            "x_line": self.x_line,
            "baseline": self.baseline,
            "bottom_line": self.bottom_line,
            "k": self.k,
        }


class HeightVote(NamedTuple):
    representative: float
    kept: list[LineCandidate]
    discarded: list[LineCandidate]


def detect_bands(profile: Profile, threshold: float) -> list[LineCandidate]:
    """
    Maximal runs of rows with ``count >= threshold``, top to bottom.

    :param profile: horizontal profile.
    :param threshold: non-negative; a row exactly at the threshold is full.
    """
    if threshold < 0:
        raise SegmentationError(f"negative band threshold {threshold}")
    return [
        LineCandidate(first, last) for first, last in runs(profile.counts >= threshold)
    ]


def _clusters(heights: Sequence[int]) -> list[list[int]]:
    clusters: list[list[int]] = []
    for height in sorted(heights):
        if clusters and height <= clusters[-1][0] * CLUSTER_RATIO:
            clusters[-1].append(height)
        else:
            clusters.append([height])
    return clusters


def vote_heights(candidates: Sequence[LineCandidate]) -> HeightVote:
    """
    Elect a representative height and discard outliers.

    Heights are grouped into clusters of values within 25% of the cluster's
    smallest member. The biggest cluster wins (ties: larger total height)
    and its median becomes the representative. A candidate is discarded iff
    ``|height - representative| / representative > 0.5``.

    :raises SegmentationError: no candidates.
    """
    if not candidates:
        raise SegmentationError("cannot vote on an empty candidate list")
    winner = max(
        _clusters([candidate.height for candidate in candidates]),
        key=lambda cluster: (len(cluster), sum(cluster)),
    )
    representative = float(statistics.median(winner))
    kept: list[LineCandidate] = []
    discarded: list[LineCandidate] = []
    for candidate in candidates:
        deviation = abs(candidate.height - representative) / representative
        (discarded if deviation > DISCARD_RATIO else kept).append(candidate)
    return HeightVote(representative, kept, discarded)


def _ink_block(counts: np.ndarray, band: LineCandidate) -> LineCandidate:
    """Grow a band over the adjacent non-empty rows."""
    first, last = band.first_row, band.last_row
    while first > 0 and counts[first - 1] > 0:
        first -= 1
    while last < counts.size - 1 and counts[last + 1] > 0:
        last += 1
    return LineCandidate(first, last)


def _merge_by_block(
    counts: np.ndarray, candidates: Sequence[LineCandidate],
) -> dict[LineCandidate, LineCandidate]:
    """
    Join candidates lying in one ink block.

    :return: ink block -> span from the first to the last joined candidate row.
    """
    merged: dict[LineCandidate, LineCandidate] = {}
    for candidate in candidates:
        block = _ink_block(counts, candidate)
        span = merged.get(block, candidate)
        merged[block] = LineCandidate(
            min(span.first_row, candidate.first_row),
            max(span.last_row, candidate.last_row),
        )
    return merged


def _select_blocks(
    counts: np.ndarray, candidates: Sequence[LineCandidate],
) -> tuple[float, list[LineCandidate]]:
    """
    Vote on the merged candidates and return the ink blocks of the winners.

    A block whose span is voted out comes back when the block itself is at
    least the representative height tall and within 50% of the median kept
    block height: its rows cross the threshold too seldom, not too often.
    """
    merged = _merge_by_block(counts, candidates)
    vote = vote_heights(sorted(merged.values()))
    winners = set(vote.kept)
    kept = [block for block, span in merged.items() if span in winners]
    reference = float(statistics.median(block.height for block in kept))
    for block, span in merged.items():
        if span in winners or block.height < vote.representative:
            continue
        if abs(block.height - reference) / reference <= DISCARD_RATIO:
            logger.debug("block %d-%d kept by its ink height", block.first_row, block.last_row)
            kept.append(block)
        else:
            logger.debug("discarded block %d-%d", block.first_row, block.last_row)
    return vote.representative, sorted(kept)


def _recover_short_lines(
    profile: Profile,
    first_row: int,
    last_row: int,
    blocks: Sequence[LineCandidate],
    representative: float,
    depth: int = 1,
) -> list[LineCandidate]:
    """Search rows of ``first_row..last_row`` outside ``blocks`` with local mvpl."""
    covered = np.zeros(last_row - first_row + 1, dtype=np.bool_)
    for block in blocks:
        start = max(block.first_row, first_row) - first_row
        stop = min(block.last_row, last_row) - first_row + 1
        if start < stop:
            covered[start:stop] = True

    recovered: list[LineCandidate] = []
    for start, stop in runs(~covered):
        first, last = first_row + start, first_row + stop
        region = profile.section(first, last + 1)
        if len(region) <= representative / 2 or region.total == 0:
            continue
        local = [
            LineCandidate(band.first_row + first, band.last_row + first)
            for band in detect_bands(region, mvpl(region))
        ]
        logger.debug(
            "rows %d-%d: %d candidates at depth %d", first, last, len(local), depth,
        )
        recovered.extend(local)
        if local and depth < MAX_RECURSION_DEPTH:
            local_blocks = [_ink_block(profile.counts, band) for band in local]
            recovered.extend(
                _recover_short_lines(
                    profile, first, last, local_blocks, representative, depth + 1,
                ),
            )
    return recovered


def estimate_reference_lines(img: BinaryImage, band: LineCandidate) -> TextLine:
    """
    Estimate x-line and baseline inside a band and derive the other two.

    The x-line is the first row whose count reaches the band's own mvpl and
    the baseline the last one; ``k = baseline - x_line`` and the top and
    bottom lines sit ``k`` rows outside them, clamped to the band. Bands too
    short to tell two rows apart fall back to equal thirds, every row kept
    inside the band.

    :raises SegmentationError: a band of a single row has no room for
        an x-line above the baseline.
    """
    if band.height < MIN_BAND_ROWS:
        raise SegmentationError(
            f"band {band.first_row}-{band.last_row} too short for reference lines",
        )
    box = BoundingBox(0, band.first_row, img.width, band.height)
    section = horizontal_profile(crop(img, box))
    full = np.flatnonzero(section.counts >= mvpl(section))
    if band.height >= MIN_REFERENCE_ROWS and full.size and full[-1] > full[0]:
        x_line = band.first_row + int(full[0])
        baseline = band.first_row + int(full[-1])
        k = float(baseline - x_line)
        top_line = max(band.first_row, x_line - int(k))
        bottom_line = min(band.last_row, baseline + int(k))
        clamped = top_line != x_line - k or bottom_line != baseline + k
        return TextLine(box, top_line, x_line, baseline, bottom_line, k, clamped)

    k = band.height / 3
    x_line = min(band.first_row + math.floor(k), band.last_row - 1)
    baseline = min(band.last_row, x_line + max(1, round(k)))
    bottom_line = band.last_row
    logger.debug("band %d-%d too short, using thirds", band.first_row, band.last_row)
    return TextLine(box, band.first_row, x_line, baseline, bottom_line, k, True)


def segment_lines(img: BinaryImage) -> list[TextLine]:
    """
    Extract the text lines of a deskewed page, top to bottom.

    Ink blocks a single row tall cannot carry reference lines and are
    skipped.

    :param img: binary page.
    :return: one TextLine per detected line; empty for a page without ink.
    """
    profile = horizontal_profile(img)
    if profile.total == 0:
        return []

    candidates = detect_bands(profile, mvpl(profile))
    representative, blocks = _select_blocks(profile.counts, candidates)
    recovered = _recover_short_lines(
        profile, 0, len(profile) - 1, blocks, representative,
    )
    if recovered:
        logger.info("recovered %d shorter line candidates", len(recovered))
        preliminary = [
            band for band in candidates if _ink_block(profile.counts, band) in blocks
        ]
        _, blocks = _select_blocks(profile.counts, preliminary + recovered)

    lines: list[TextLine] = []
    for block in blocks:
        if block.height < MIN_BAND_ROWS:
            logger.warning("skipping one-row line at row %d", block.first_row)
            continue
        lines.append(estimate_reference_lines(img, block))
    return lines
