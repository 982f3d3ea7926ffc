"""Deterministic map helper honoring the BMYCOVER_THREADS environment knob.

Results always come back in input order, so any worker count produces the
same output; all reductions downstream are exact integer sums, which are
order-independent anyway.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "BMYCOVER_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_THREADS, "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)


def parallel_map(fn, items):
    items = list(items)
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
