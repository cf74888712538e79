"""Range-partitioned process pool with an order-preserving merge."""
from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi) into at most `parts` contiguous, nonempty pieces."""
    if hi <= lo:
        return []
    parts = max(1, min(parts, hi - lo))
    step, extra = divmod(hi - lo, parts)
    out = []
    start = lo
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out


def map_ordered(func, tasks, workers: int = 1):
    """Apply func to every task; results come back in task order.

    With workers <= 1 everything runs in-process. Results never depend on the
    worker count because each task is computed independently and merged in
    submission order.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(func, tasks))
