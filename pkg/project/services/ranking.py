"""
Candidate ranking for word spotting.

Candidates within the width tolerance are scored on every descriptor,
ordered by SSD, cut to ``top_k`` and then fused by Borda count within
that result set. The active ordering picks the final row order.
"""

import enum
import logging
from dataclasses import dataclass, replace
from functools import partial
from typing import Any, Optional, Protocol, Sequence

import numpy as np
from scipy.stats import rankdata

from project.services.matching.alignment import align_blocks
from project.services.matching.length import length_filter
from project.services.matching.shape_code import (
    DEFAULT_SECTOR_WIDTH,
    ShapeCode,
    ShapePriority,
    shape_code,
    shape_mismatch,
)
from project.services.matching.ssd import ssd
from project.services.matching.ulam import (
    DEFAULT_MAX_HEIGHT,
    DEFAULT_MAX_WIDTH,
    ulam_word_similarity,
)
from project.services.segmentation.words import WordBlock, WordId
from project.services.workers import parallel_map

logger = logging.getLogger(__name__)

DEFAULT_TOP_K = 10


class Ordering(str, enum.Enum):
    """Row order of a result set."""

    SSD = "ssd"
    FUSED = "fused"


@dataclass(frozen=True)
class MatchScore:
    candidate_id: WordId
    width_delta: int
    ssd: float
    shape_mismatches: int
    ulam_tau: float
    char_count_delta: int
    fused_rank: int = 0
    ssd_rank: int = 0
    shape_rank: int = 0
    ulam_rank: int = 0
    count_rank: int = 0
    ulam_downsampled: bool = False

    def as_dict(self) -> dict[str, Any]:
        return {
            "word_id": str(self.candidate_id),
            "width_delta": self.width_delta,
            "ssd": self.ssd if np.isfinite(self.ssd) else None,
            "shape_mismatches": self.shape_mismatches,
            "ulam_tau": self.ulam_tau,
            "char_count_delta": self.char_count_delta,
            "fused_rank": self.fused_rank,
            "ssd_rank": self.ssd_rank,
            "shape_rank": self.shape_rank,
            "ulam_rank": self.ulam_rank,
            "count_rank": self.count_rank,
        }


@dataclass(frozen=True)
class RankedMatches:
    query_id: WordId
    rows: list[MatchScore]
    ordering: Ordering = Ordering.SSD


@dataclass(frozen=True)
class ScoringOptions:
    sector_width: int = DEFAULT_SECTOR_WIDTH
    noise_floor: int = 1
    priority: ShapePriority = ShapePriority.ASCENDER
    ulam_max_height: int = DEFAULT_MAX_HEIGHT
    ulam_max_width: int = DEFAULT_MAX_WIDTH


class CandidateSource(Protocol):
    """Anything that can hand out the word blocks near a given width."""

    def candidates(self, width: int, tolerance: int) -> list[WordBlock]: ...


class BlockCollection:
    """In-memory candidate source over ready-made word blocks."""

    def __init__(self, blocks: Sequence[WordBlock]) -> None:
        self.blocks = list(blocks)

    def candidates(self, width: int, tolerance: int) -> list[WordBlock]:
        return [
            block
            for block in self.blocks
            if length_filter(width, block.width, tolerance)
        ]


def _code(block: WordBlock, options: ScoringOptions) -> ShapeCode:
    cached = block.shape_code
    if cached is not None and cached.made_with(
        options.sector_width, options.noise_floor, options.priority,
    ):
        return cached
    return shape_code(block, options.sector_width, options.noise_floor, options.priority)


def score_candidate(
    candidate: WordBlock,
    query: WordBlock,
    options: ScoringOptions,
) -> MatchScore:
    """Every descriptor of one candidate against the query."""
    frame_query, frame_candidate = align_blocks(query, candidate)
    ulam = ulam_word_similarity(
        query,
        candidate,
        max_height=options.ulam_max_height,
        max_width=options.ulam_max_width,
    )
    return MatchScore(
        candidate_id=candidate.word_id,
        width_delta=candidate.width - query.width,
        ssd=ssd(frame_query, frame_candidate),
        shape_mismatches=shape_mismatch(_code(query, options), _code(candidate, options)),
        ulam_tau=ulam.tau,
        char_count_delta=candidate.char_count - query.char_count,
        ulam_downsampled=ulam.downsampled,
    )


def fuse_ranks(rows: Sequence[MatchScore]) -> list[MatchScore]:
    """
    Borda fusion of the descriptor orderings.

    Each descriptor contributes the candidate's rank within the set (ties
    share the lowest rank): SSD ascending, shape mismatches ascending, Ulam's
    tau descending and absolute character-count difference ascending.
    ``fused_rank`` orders by rank sum, ties by candidate id.

    :return: the rows, in input order, with ``fused_rank`` and the four
        descriptor ranks set.
    """
    if not rows:
        return []
    columns = [
        [row.ssd for row in rows],
        [row.shape_mismatches for row in rows],
        [-row.ulam_tau for row in rows],
        [abs(row.char_count_delta) for row in rows],
    ]
    ranks = np.array([rankdata(column, method="min") for column in columns], dtype=int)
    totals = ranks.sum(axis=0)
    order = sorted(range(len(rows)), key=lambda index: (totals[index], rows[index].candidate_id))
    fused = list(rows)
    for rank, index in enumerate(order, start=1):
        ssd_rank, shape_rank, ulam_rank, count_rank = (int(r) for r in ranks[:, index])
        fused[index] = replace(
            rows[index],
            fused_rank=rank,
            ssd_rank=ssd_rank,
            shape_rank=shape_rank,
            ulam_rank=ulam_rank,
            count_rank=count_rank,
        )
    return fused


def match_word(
    query: WordBlock,
    index: CandidateSource,
    top_k: int = DEFAULT_TOP_K,
    ordering: Ordering = Ordering.SSD,
    tolerance: int = 10,
    options: Optional[ScoringOptions] = None,
    jobs: int = 1,
) -> RankedMatches:
    """
    Rank the words of an index against a query word.

    :param query: query word with bitmap and reference rows.
    :param index: candidate source; the query itself may be part of it.
    :param top_k: rows kept after the SSD ordering.
    :param ordering: final row order.
    :param tolerance: width tolerance of the length filter.
    :param options: descriptor parameters.
    :param jobs: worker processes for scoring.
    """
    options = options or ScoringOptions()
    candidates = index.candidates(query.width, tolerance)
    logger.info(
        "query %s: %d candidates within %d px", query.word_id, len(candidates), tolerance,
    )
    scores = parallel_map(
        partial(score_candidate, query=query, options=options), candidates, jobs,
    )
    scores.sort(key=lambda row: (row.ssd, row.candidate_id))
    rows = fuse_ranks(scores[: max(0, top_k)])
    if ordering is Ordering.FUSED:
        rows.sort(key=lambda row: row.fused_rank)
    return RankedMatches(query_id=query.word_id, rows=rows, ordering=ordering)
