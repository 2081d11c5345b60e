import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "DISPERSIVE_LAB_THREADS"


def max_workers() -> int:
    raw = os.environ.get(ENV_THREADS)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def map_ordered(fn, items):
    """``list(map(fn, items))`` spread over threads; result order is the input order."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
