"""Optional thread fan-out for independent LP tasks.

``BJORTHO_THREADS`` caps the worker count; unset or 1 means sequential and
lazy, so callers that stop at the first hit skip the remaining tasks.
Results always come back in input order, which keeps every report
deterministic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("BJORTHO_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    workers = thread_count()
    if workers == 1:
        return map(fn, items)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
