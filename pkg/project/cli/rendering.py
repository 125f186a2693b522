import math
from typing import Any, Mapping, Optional

import ujson

from project.services.ranking import RankedMatches
from project.services.segmentation.words import WordId

COLUMNS = (
    "rank",
    "word_id",
    "width_delta",
    "ssd",
    "shape_mismatches",
    "ulam_tau",
    "char_count_delta",
    "fused_rank",
    "ssd_rank",
    "shape_rank",
    "ulam_rank",
    "count_rank",
)
LABEL_COLUMN = "label"

Labels = Mapping[WordId, str]


def dumps(payload: Any) -> str:
    """JSON text of a command result, newline-terminated."""
    return (
        ujson.dumps(payload, indent=2, ensure_ascii=False, escape_forward_slashes=False)
        + "\n"
    )


def _number(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return f"{value:.6f}"


def matches_to_tsv(result: RankedMatches, labels: Optional[Labels] = None) -> str:
    header = list(COLUMNS)
    if labels is not None:
        header.append(LABEL_COLUMN)
    lines = ["\t".join(header)]
    for rank, row in enumerate(result.rows, start=1):
        cells = [
            str(rank),
            str(row.candidate_id),
            str(row.width_delta),
            _number(row.ssd),
            str(row.shape_mismatches),
            _number(row.ulam_tau),
            str(row.char_count_delta),
            str(row.fused_rank),
            str(row.ssd_rank),
            str(row.shape_rank),
            str(row.ulam_rank),
            str(row.count_rank),
        ]
        if labels is not None:
            cells.append(labels.get(row.candidate_id, ""))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def matches_to_json(result: RankedMatches, labels: Optional[Labels] = None) -> str:
    rows = []
    for rank, row in enumerate(result.rows, start=1):
        entry = {"rank": rank, **row.as_dict()}
        if labels is not None:
            entry[LABEL_COLUMN] = labels.get(row.candidate_id)
        rows.append(entry)
    return dumps(
        {
            "query": str(result.query_id),
            "ordering": result.ordering.value,
            "rows": rows,
        },
    )
