"""Ordered parallel map used by every per-prime loop.

Results always come back in input order, and every reduction downstream
folds them sequentially, so the worker count never changes any output.
"""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], n_chunks: int) -> list[Sequence[T]]:
    n_chunks = max(1, min(n_chunks, len(items)))
    size, extra = divmod(len(items), n_chunks)
    out = []
    start = 0
    for i in range(n_chunks):
        stop = start + size + (i < extra)
        out.append(items[start:stop])
        start = stop
    return out


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """``[func(x) for x in items]``, optionally spread over worker processes.

    ``func`` must be picklable when ``workers > 1``.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    ctx = mp.get_context("fork")
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
