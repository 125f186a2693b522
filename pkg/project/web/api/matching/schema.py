from typing import Optional

from pydantic import BaseModel

from project.services.ranking import Ordering


class MatchRow(BaseModel):
    rank: int
    word_id: str
    width_delta: int
    # None when one of the two words is blank
    ssd: Optional[float]
    shape_mismatches: int
    ulam_tau: float
    char_count_delta: int
    fused_rank: int
    # rank of the row under each descriptor alone
    ssd_rank: int
    shape_rank: int
    ulam_rank: int
    count_rank: int


class MatchesResponse(BaseModel):
    query: str
    ordering: Ordering
    rows: list[MatchRow]
