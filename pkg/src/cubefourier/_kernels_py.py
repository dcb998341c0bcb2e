"""Numpy fallback for the butterfly stage kernels.

Mirrors the compiled stage functions exactly: same signature, same
per-element arithmetic (two multiplies then one add), so both backends
produce the same doubles.
"""

import numpy as np


def stage_f64(v, w00, w01, w10, w11, h, block_lo, block_hi):
    a = v[block_lo * 2 * h : block_hi * 2 * h].reshape(-1, 2, h)
    lo = a[:, 0, :].copy()
    hi = a[:, 1, :]
    a[:, 0, :] = w00 * lo + w01 * hi
    a[:, 1, :] = w10 * lo + w11 * hi


def stage_i64(v, h, block_lo, block_hi):
    a = v[block_lo * 2 * h : block_hi * 2 * h].reshape(-1, 2, h)
    lo = a[:, 0, :].copy()
    hi = a[:, 1, :]
    np.add(lo, hi, out=a[:, 0, :])
    np.subtract(lo, hi, out=a[:, 1, :])
