"""Process-wide knobs.

Only the worker-thread count lives here.  Results never depend on it:
node-parallel operators write disjoint output slices, and every reduction
runs in a fixed order.
"""

import os

_threads = None


def get_threads() -> int:
    global _threads
    if _threads is None:
        try:
            _threads = max(1, int(os.environ.get("WHASYM_THREADS", "1")))
        except ValueError:
            _threads = 1
    return _threads


def set_threads(n: int) -> None:
    global _threads
    _threads = max(1, int(n))
