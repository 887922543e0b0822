import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from tqdm import tqdm

_T = TypeVar("_T")
_R = TypeVar("_R")

logger = logging.getLogger(__name__)


def ordered_map(
    fn: Callable[[_T], _R],
    items: Iterable[_T],
    workers: int = 1,
    *,
    progress: bool = False,
    desc: str = "",
) -> list[_R]:
    """Apply `fn` to every item and return the results in input order.

    With more than one worker the calls run in a process pool, so `fn` and the items must
    be picklable. Results never depend on the worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in tqdm(items, desc=desc, disable=not progress)]

    workers = min(workers, len(items))
    logger.debug(f"Dispatching {len(items)} jobs to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            tqdm(pool.map(fn, items), total=len(items), desc=desc, disable=not progress)
        )
