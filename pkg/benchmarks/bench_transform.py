#!/usr/bin/env python3
"""Benchmark the butterfly kernels: compiled extension vs numpy fallback.

Runs the full forward transform at several sizes with each backend driving
the same stage schedule, then reports times and the speedup.  Both produce
bitwise identical output, so only speed is at stake.

Usage: python benchmarks/bench_transform.py [--max-n 24] [--threads 4]
"""

import argparse
import time

import numpy as np

from cubefourier import _kernels_py
from cubefourier.kernels import _run_stages

try:
    from cubefourier import _core
except ImportError:
    _core = None


def bench(stage, n, p, threads, repeats=3):
    rng = np.random.Generator(np.random.PCG64(42))
    base = rng.standard_normal(1 << n)
    c = (p * (1.0 - p)) ** 0.5
    weights = (1.0 - p, p, c, -c)
    best = float("inf")
    out = None
    for _ in range(repeats):
        v = base.copy()
        t0 = time.perf_counter()
        _run_stages(v, stage, weights, threads)
        best = min(best, time.perf_counter() - t0)
        out = v
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=24)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    print(f"{'n':>4} {'numpy':>12} {'compiled':>12} {'speedup':>9}  identical")
    for n in range(12, args.max_n + 1, 2):
        t_py, v_py = bench(_kernels_py.stage_f64, n, 0.3, args.threads)
        if _core is None:
            print(f"{n:>4} {t_py:>11.4f}s {'n/a':>12} {'n/a':>9}")
            continue
        t_c, v_c = bench(_core.stage_f64, n, 0.3, args.threads)
        same = np.array_equal(v_py, v_c)
        print(
            f"{n:>4} {t_py:>11.4f}s {t_c:>11.4f}s {t_py / t_c:>8.1f}x  {same}"
        )


if __name__ == "__main__":
    main()
