import logging
from functools import partial
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import anyio
from anyio import CapacityLimiter, create_task_group, to_thread

from torus_pmra.config import ConfigManager

logger = logging.getLogger(__name__)

C = TypeVar("C")
R = TypeVar("R")


async def _run_in_threads(
    fn: Callable[[C], R], chunks: Sequence[C], workers: int
) -> List[Optional[R]]:
    results: List[Optional[R]] = [None] * len(chunks)
    limiter = CapacityLimiter(workers)

    async def _work(index: int, chunk: C) -> None:
        try:
            results[index] = await to_thread.run_sync(fn, chunk, limiter=limiter)
        except Exception:
            logger.exception("Worker chunk %d of %d failed", index, len(chunks))
            raise

    async with create_task_group() as tg:
        for index, chunk in enumerate(chunks):
            tg.start_soon(_work, index, chunk)
    return results


def run_chunks(
    fn: Callable[[C], R], chunks: Iterable[C], workers: Optional[int] = None
) -> List[R]:
    """
    Maps `fn` over the chunks, in threads when more than one worker is allowed.

    Args:
        fn: a pure function of one chunk
        chunks: the work items
        workers: thread count; defaults to the configured worker count

    Returns:
        The results in chunk order, whatever order the threads finished in.
    """
    items = list(chunks)
    limit = workers or ConfigManager().get_default_config().workers
    if limit <= 1 or len(items) <= 1:
        return [fn(chunk) for chunk in items]
    logger.debug("Running %d chunks on %d worker threads", len(items), limit)
    results = anyio.run(partial(_run_in_threads, fn, items, limit))
    return results  # type: ignore
