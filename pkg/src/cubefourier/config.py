"""Runtime limits and defaults.

The variable-count cap bounds every 2**n allocation (2**26 doubles is about
0.5 GiB, which keeps desk-scale guarantees).  Override with
``CUBEFOURIER_MAX_N`` / :func:`set_max_n`; worker-pool width with
``CUBEFOURIER_THREADS`` / :func:`set_threads`.
"""

import os

from .errors import ResourceError

DEFAULT_MAX_N = 26

_max_n = int(os.environ.get("CUBEFOURIER_MAX_N", DEFAULT_MAX_N))
_threads = int(os.environ.get("CUBEFOURIER_THREADS", "1"))


def get_max_n() -> int:
    return _max_n


def set_max_n(n: int) -> None:
    global _max_n
    if n < 1:
        raise ValueError("max_n must be at least 1")
    _max_n = n


def get_threads() -> int:
    return _threads


def set_threads(count: int) -> None:
    global _threads
    if count < 1:
        raise ValueError("thread count must be at least 1")
    _threads = count


def check_table_size(n: int, what: str = "table") -> None:
    """Refuse allocations of 2**n entries beyond the configured cap."""
    if n > _max_n:
        raise ResourceError(
            f"{what} on {n} variables needs 2^{n} entries, over the cap of "
            f"n <= {_max_n}; raise it with set_max_n(), --max-n, or CUBEFOURIER_MAX_N"
        )
