"""
Worker pool for sample-parallel verification and region scans.

Results always come back in input order, whatever order the workers finish
in, so every reduction over them is deterministic.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from ..core.errors import ConfigurationError

logger = logging.getLogger(__name__)

THREADS_ENV = "CG_LAB_THREADS"
MAX_DEFAULT_THREADS = 8

T = TypeVar("T")
R = TypeVar("R")


def _env_threads() -> Optional[int]:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def resolve_threads(threads: Optional[int] = None) -> int:
    """
    Worker count: the explicit value, else min(8, cpu_count), capped by
    CG_LAB_THREADS when that is set.

    Raises:
        ConfigurationError: if either value is not a positive integer
    """
    cap = _env_threads()
    if threads is None:
        if cap is not None:
            return cap
        return max(1, min(MAX_DEFAULT_THREADS, os.cpu_count() or 1))
    if isinstance(threads, bool) or int(threads) != threads or threads < 1:
        raise ConfigurationError(f"thread count must be a positive integer, got {threads!r}")
    threads = int(threads)
    if cap is not None and threads > cap:
        logger.debug("thread count %d capped to %d by %s", threads, cap, THREADS_ENV)
        return cap
    return threads


def map_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply fn to every item and return the results in input order.

    With one worker (or a single item) the calls run inline. The first
    exception raised by fn propagates.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    workers = min(threads, len(items))
    logger.debug("dispatching %d tasks to %d workers", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
