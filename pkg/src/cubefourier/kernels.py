"""Backend selection and stage driver for the cube transforms.

The compiled extension (``cubefourier._core``) is preferred; the numpy
fallback is selected automatically when the extension is unavailable, or
explicitly via ``CUBEFOURIER_PURE_PYTHON=1``.  Both backends run the same
stage schedule, so they agree to the last double.

Threading splits each stage's independent butterfly blocks across a worker
pool.  Every element is produced by exactly one fixed arithmetic
expression, so results are bitwise identical for every thread count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor

from . import _kernels_py

if os.environ.get("CUBEFOURIER_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

# Below this table size, thread dispatch costs more than it saves.
_PARALLEL_MIN_SIZE = 1 << 16


def backend_name() -> str:
    return BACKEND


def _run_stages(v, stage, weights, threads):
    size = v.shape[0]
    n = size.bit_length() - 1
    use_pool = threads > 1 and size >= _PARALLEL_MIN_SIZE
    pool = ThreadPoolExecutor(max_workers=threads) if use_pool else None
    try:
        for i in range(n):
            h = 1 << i
            nblocks = size >> (i + 1)
            if pool is None or nblocks < threads:
                stage(v, *weights, h, 0, nblocks)
            else:
                cuts = [(nblocks * t) // threads for t in range(threads + 1)]
                futures = [
                    pool.submit(stage, v, *weights, h, cuts[t], cuts[t + 1])
                    for t in range(threads)
                ]
                for fut in futures:
                    fut.result()
    finally:
        if pool is not None:
            pool.shutdown()


def biased_forward_inplace(v, p: float, threads: int = 1) -> None:
    """Apply the n-stage forward butterfly for bias p to a float64 array."""
    c = math.sqrt(p * (1.0 - p))
    _run_stages(v, _impl.stage_f64, (1.0 - p, p, c, -c), threads)


def biased_inverse_inplace(v, p: float, threads: int = 1) -> None:
    """Apply the inverse butterfly (coefficients back to point values)."""
    r = math.sqrt(p / (1.0 - p))
    s = math.sqrt((1.0 - p) / p)
    _run_stages(v, _impl.stage_f64, (1.0, r, 1.0, -s), threads)


def wht_inplace(v, threads: int = 1) -> None:
    """Unnormalised integer Walsh-Hadamard transform of an int64 array."""
    _run_stages(v, _impl.stage_i64, (), threads)
