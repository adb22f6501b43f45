"""Thread-count control for the gridding kernels.

numba caps its worker pool at the CPU count unless NUMBA_NUM_THREADS is set
before the first numba import, which would make thread-sweep benchmarks on
small machines impossible.  This module must therefore be imported before
anything else pulls in numba; ``nfftk/__init__`` guarantees that for normal
use.
"""

import os

_POOL_SIZE = max(8, os.cpu_count() or 1)
os.environ.setdefault("NUMBA_NUM_THREADS", str(_POOL_SIZE))
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numba  # noqa: E402  (env vars above must win)

MAX_THREADS = int(numba.config.NUMBA_NUM_THREADS)


def set_threads(count):
    """Set the worker count used by all transform kernels.

    Raises ValueError outside [1, MAX_THREADS].
    """
    count = int(count)
    if not 1 <= count <= MAX_THREADS:
        raise ValueError(f"thread count must be in [1, {MAX_THREADS}], got {count}")
    numba.set_num_threads(count)


def get_threads():
    """Current worker count."""
    return int(numba.get_num_threads())


def _init_from_env():
    want = os.environ.get("THREADS")
    if want is None:
        want = min(os.cpu_count() or 1, MAX_THREADS)
    set_threads(max(1, min(int(want), MAX_THREADS)))


_init_from_env()
