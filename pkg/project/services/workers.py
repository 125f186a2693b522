import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

logger = logging.getLogger(__name__)

ItemType = TypeVar("ItemType")
ResultType = TypeVar("ResultType")


def parallel_map(
    func: Callable[[ItemType], ResultType],
    items: Sequence[ItemType],
    jobs: int = 1,
) -> list[ResultType]:
    """
    Apply ``func`` to every item, in at most ``jobs`` worker processes.

    Results keep the order of ``items`` whatever the schedule. ``func`` must
    be picklable (a module-level function or a partial of one).
    """
    if jobs <= 1 or len(items) < 2:  # noqa: PLR2004
        return [func(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug("mapping %d items over %d processes", len(items), workers)
    chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
