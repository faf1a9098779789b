"""Order-preserving thread pool used for per-point work."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "VORTEX_WIGNER_THREADS"


def thread_count(requested=None) -> int:
    """Worker count: ``requested``, capped by ``$VORTEX_WIGNER_THREADS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, int(n))


def pmap(fn, items, threads=None) -> list:
    """``[fn(x) for x in items]`` evaluated on a thread pool, results in input order."""
    items = list(items)
    n = min(thread_count(threads), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
