# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Butterfly stage kernels (compiled fast path).

One stage mixes the two halves of every block of 2*h entries with a fixed
2x2 weight matrix.  Pairs are independent, so callers may split the block
range across threads; the result is bitwise identical for any split.
"""


def stage_f64(double[::1] v, double w00, double w01, double w10, double w11,
              Py_ssize_t h, Py_ssize_t block_lo, Py_ssize_t block_hi):
    cdef Py_ssize_t b, k, base
    cdef double lo, hi
    with nogil:
        for b in range(block_lo, block_hi):
            base = 2 * h * b
            for k in range(base, base + h):
                lo = v[k]
                hi = v[k + h]
                v[k] = w00 * lo + w01 * hi
                v[k + h] = w10 * lo + w11 * hi


def stage_i64(long long[::1] v, Py_ssize_t h, Py_ssize_t block_lo, Py_ssize_t block_hi):
    cdef Py_ssize_t b, k, base
    cdef long long lo, hi
    with nogil:
        for b in range(block_lo, block_hi):
            base = 2 * h * b
            for k in range(base, base + h):
                lo = v[k]
                hi = v[k + h]
                v[k] = lo + hi
                v[k + h] = lo - hi
