"""Fourier analysis on the (possibly biased) discrete cube.

Under the product measure where each stored bit is 1 with probability p,
the orthonormal characters are indexed by subset masks S and the transform
is computed in place by n butterfly stages, one per coordinate, in O(n 2^n)
time.  Stage order is fixed (coordinate 1 first) so results are bitwise
reproducible across backends and thread counts.

The coefficient at subset mask S lives at index S of the coefficient array;
coordinate i corresponds to mask bit i-1.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .boolfn import (
    Bias,
    RealTable,
    TruthTable,
    as_bias,
    mask_array,
    popcounts,
)
from .config import check_table_size, get_threads
from .errors import InputError

__all__ = [
    "Spectrum",
    "DyadicSpectrum",
    "LevelProfile",
    "transform",
    "inverse_transform",
    "exact_transform",
    "reconstruct_exact",
    "spectral_entropy",
    "total_influence_spectral",
    "influence_combinatorial",
    "influence_vector",
    "total_influence_combinatorial",
    "measure_weights",
    "level_profile",
    "exact_level_profile",
    "tail_weight",
    "degree",
    "min_support",
    "dyadic_check",
    "parseval_gap",
    "spectrum_to_json",
    "spectrum_from_json",
    "save_spectrum_json",
    "load_spectrum_json",
    "spectrum_to_bytes",
    "spectrum_from_bytes",
    "save_spectrum_binary",
    "load_spectrum_binary",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Transform coefficients of one function at one bias."""

    n: int
    p: float
    coeffs: np.ndarray  # float64, index = subset mask, read-only

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a spectrum needs at least one variable")
        if not 0.0 < self.p < 1.0:
            raise InputError(f"bias must lie strictly between 0 and 1, got {self.p}")
        check_table_size(self.n, "spectrum")
        arr = np.ascontiguousarray(self.coeffs, dtype=np.float64)
        if arr.ndim != 1 or arr.size != 1 << self.n:
            raise InputError(
                f"expected 2^{self.n} = {1 << self.n} coefficients, got {arr.size}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def size(self) -> int:
        return 1 << self.n

    def squares(self) -> np.ndarray:
        return self.coeffs * self.coeffs

    def coefficient(self, mask: int) -> float:
        return float(self.coeffs[mask])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Spectrum)
            and self.n == other.n
            and self.p == other.p
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )


@dataclass(frozen=True, eq=False)
class DyadicSpectrum:
    """Exact uniform-measure coefficients: coeff(S) = numerators[S] / 2**n.

    Computed with 64-bit integer butterflies, so every arithmetic step is
    exact.  For a +-1 valued function the numerators always fit: their
    squares sum to 4**n.
    """

    n: int
    numerators: np.ndarray  # int64, index = subset mask, read-only

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a spectrum needs at least one variable")
        check_table_size(self.n, "spectrum")
        arr = np.ascontiguousarray(self.numerators, dtype=np.int64)
        if arr.ndim != 1 or arr.size != 1 << self.n:
            raise InputError(
                f"expected 2^{self.n} = {1 << self.n} numerators, got {arr.size}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "numerators", arr)

    @property
    def size(self) -> int:
        return 1 << self.n

    def coefficient(self, mask: int) -> Fraction:
        return Fraction(int(self.numerators[mask]), 1 << self.n)

    def square(self, mask: int) -> Fraction:
        num = int(self.numerators[mask])
        return Fraction(num * num, 1 << (2 * self.n))

    def to_spectrum(self) -> Spectrum:
        return Spectrum(self.n, 0.5, self.numerators.astype(np.float64) / (1 << self.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DyadicSpectrum)
            and self.n == other.n
            and bool(np.array_equal(self.numerators, other.numerators))
        )


@dataclass(frozen=True, eq=False)
class LevelProfile:
    """Squared coefficient mass per level |S| = 0 .. n.

    ``exact`` carries the same numbers as Fractions when the profile came
    from exact arithmetic; float ``weights`` are always present.
    """

    n: int
    weights: np.ndarray  # float64, length n + 1, read-only
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        arr = np.ascontiguousarray(self.weights, dtype=np.float64)
        if arr.ndim != 1 or arr.size != self.n + 1:
            raise InputError(f"expected {self.n + 1} level weights, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)
        if self.exact is not None and len(self.exact) != self.n + 1:
            raise InputError("exact profile length mismatch")

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))

    def mean_level(self) -> float:
        return float(np.sum(np.arange(self.n + 1) * self.weights))

    def variance(self) -> float:
        levels = np.arange(self.n + 1, dtype=np.float64)
        mean = self.mean_level()
        return float(np.sum((levels - mean) ** 2 * self.weights))

    def tail(self, k: int) -> float:
        """Mass on levels strictly above k."""
        if k >= self.n:
            return 0.0
        return float(np.sum(self.weights[max(k + 1, 0) :]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LevelProfile)
            and self.n == other.n
            and bool(np.array_equal(self.weights, other.weights))
        )


# ---------------------------------------------------------------------------
# transforms


def _resolve_threads(threads: int | None) -> int:
    return get_threads() if threads is None else max(1, int(threads))


def transform(f: TruthTable | RealTable, p=0.5, threads: int | None = None) -> Spectrum:
    """Coefficients of f in the orthonormal basis of the p-biased measure."""
    bias = as_bias(p)
    v = f.sign_values()  # fresh, writable copy
    kernels.biased_forward_inplace(v, bias.p, threads=_resolve_threads(threads))
    return Spectrum(f.n, bias.p, v)


def inverse_transform(spec: Spectrum, threads: int | None = None) -> RealTable:
    """Rebuild the function table from its coefficients."""
    v = spec.coeffs.copy()
    kernels.biased_inverse_inplace(v, spec.p, threads=_resolve_threads(threads))
    return RealTable(spec.n, v)


_EXACT_VALUE_BOUND = 1 << 20


def exact_transform(f: TruthTable | RealTable, threads: int | None = None) -> DyadicSpectrum:
    """Uniform-measure coefficients in exact integer arithmetic.

    Accepts any integer-valued table whose entries are small enough that the
    2**n-term sums cannot overflow 64 bits.
    """
    if isinstance(f, TruthTable):
        v = 1 - 2 * f.bits.astype(np.int64)
    else:
        vals = f.values
        rounded = np.rint(vals)
        if not np.array_equal(vals, rounded):
            raise InputError("exact transform needs integer-valued tables")
        if vals.size and np.max(np.abs(vals)) > _EXACT_VALUE_BOUND:
            raise InputError(
                f"exact transform supports integer values up to {_EXACT_VALUE_BOUND}"
            )
        v = rounded.astype(np.int64)
    if f.n < 1:
        raise InputError("exact transform needs at least one variable")
    kernels.wht_inplace(v, threads=_resolve_threads(threads))
    return DyadicSpectrum(f.n, v)


def reconstruct_exact(dspec: DyadicSpectrum, threads: int | None = None):
    """Invert an exact spectrum; returns a TruthTable when the values are +-1."""
    v = dspec.numerators.copy()
    kernels.wht_inplace(v, threads=_resolve_threads(threads))
    size = 1 << dspec.n
    if np.any(v % size):
        raise InputError("numerators are not a valid exact spectrum")
    vals = v // size
    if np.all((vals == 1) | (vals == -1)):
        return TruthTable(dspec.n, ((1 - vals) // 2).astype(np.uint8))
    return RealTable(dspec.n, vals.astype(np.float64))


# ---------------------------------------------------------------------------
# derived quantities


def spectral_entropy(spec: Spectrum | DyadicSpectrum) -> float:
    """Shannon entropy (bits) of the squared-coefficient distribution.

    Terms with zero coefficient contribute nothing.  The squares of a +-1
    valued function sum to 1, so this is the entropy of a probability
    distribution; for other tables it is the same sum taken literally.
    """
    if isinstance(spec, DyadicSpectrum):
        spec = spec.to_spectrum()
    w = spec.squares()
    nz = w[w > 0.0]
    if nz.size == 0:
        return 0.0
    # + 0.0 turns the -0.0 of a point-mass spectrum into plain zero
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def total_influence_spectral(spec: Spectrum | DyadicSpectrum) -> float:
    """Sum of |S| times squared coefficient, scaled by 1/(4p(1-p))."""
    if isinstance(spec, DyadicSpectrum):
        spec = spec.to_spectrum()
    levels = popcounts(mask_array(spec.n)).astype(np.float64)
    raw = float(np.sum(levels * spec.squares()))
    return raw / (4.0 * spec.p * (1.0 - spec.p))


def measure_weights(n: int, p: float) -> np.ndarray:
    """Probability of each mask under the product measure (bit 1 w.p. p)."""
    ones = popcounts(mask_array(n)).astype(np.float64)
    return np.power(p, ones) * np.power(1.0 - p, n - ones)


def influence_combinatorial(f: TruthTable, i: int, p=0.5) -> float:
    """Probability that flipping coordinate i changes the output."""
    bias = as_bias(p)
    if not 1 <= i <= f.n:
        raise InputError(f"coordinate {i} out of range 1..{f.n}")
    masks = mask_array(f.n)
    flipped = f.bits[masks ^ (1 << (i - 1))]
    diff = f.bits != flipped
    return float(np.sum(measure_weights(f.n, bias.p)[diff]))


def influence_vector(f: TruthTable, p=0.5) -> np.ndarray:
    """All n coordinate influences at once."""
    bias = as_bias(p)
    masks = mask_array(f.n)
    mu = measure_weights(f.n, bias.p)
    out = np.empty(f.n, dtype=np.float64)
    for i in range(1, f.n + 1):
        diff = f.bits != f.bits[masks ^ (1 << (i - 1))]
        out[i - 1] = np.sum(mu[diff])
    return out


def total_influence_combinatorial(f: TruthTable, p=0.5) -> float:
    return float(np.sum(influence_vector(f, p)))


def level_profile(spec: Spectrum | DyadicSpectrum) -> LevelProfile:
    if isinstance(spec, DyadicSpectrum):
        return exact_level_profile(spec)
    levels = popcounts(mask_array(spec.n))
    weights = np.bincount(levels, weights=spec.squares(), minlength=spec.n + 1)
    return LevelProfile(spec.n, weights)


def exact_level_profile(dspec: DyadicSpectrum) -> LevelProfile:
    levels = popcounts(mask_array(dspec.n))
    nums = dspec.numerators
    denom = 1 << (2 * dspec.n)
    exact = [Fraction(0) for _ in range(dspec.n + 1)]
    for lvl, num in zip(levels, nums):
        if num:
            exact[int(lvl)] += Fraction(int(num) * int(num), denom)
    weights = np.array([float(x) for x in exact], dtype=np.float64)
    return LevelProfile(dspec.n, weights, exact=tuple(exact))


def tail_weight(profile: LevelProfile, k: int) -> float:
    return profile.tail(k)


def degree(spec: Spectrum | DyadicSpectrum, tol: float = 1e-9) -> int:
    """Largest |S| carrying a coefficient; exact spectra ignore ``tol``."""
    if isinstance(spec, DyadicSpectrum):
        live = spec.numerators != 0
    else:
        live = np.abs(spec.coeffs) > tol
    if not np.any(live):
        return 0
    return int(np.max(popcounts(mask_array(spec.n)[live])))


def min_support(spec: Spectrum | DyadicSpectrum, epsilon: float):
    """Smallest set of subset masks whose complement weight is <= epsilon.

    Masks are taken in order of decreasing squared coefficient, ties broken
    by ascending mask, so the answer is deterministic.  Returns the mask
    array and the weight it captures.
    """
    if epsilon < 0.0:
        raise InputError("epsilon must be nonnegative")
    if isinstance(spec, DyadicSpectrum):
        spec = spec.to_spectrum()
    w = spec.squares()
    total = float(np.sum(w))
    if total <= epsilon:
        return np.empty(0, dtype=np.int64), 0.0
    order = np.argsort(-w, kind="stable")
    captured = np.cumsum(w[order])
    keep = int(np.nonzero(total - captured <= epsilon)[0][0]) + 1
    return order[:keep].astype(np.int64), float(captured[keep - 1])


def dyadic_check(dspec: DyadicSpectrum, k: int) -> bool:
    """Exact structural test for "behaves like a degree-k function".

    Two conditions, both checked on the integer numerators:

    * no weight strictly above level k (the degree really is at most k), and
    * every numerator is divisible by 2**(n - k).

    Divisibility alone is necessary but not sufficient -- parity's single
    numerator is +-2**n and divides everything, and majority-of-3 has
    numerators 0/+-4 which pass the k = 1 divisibility test despite having
    degree 3.  The level condition rules those out.
    """
    if k < 0:
        return not bool(np.any(dspec.numerators))
    if k >= dspec.n:
        return True
    levels = popcounts(mask_array(dspec.n))
    if bool(np.any(dspec.numerators[levels > k])):
        return False
    step = np.int64(1) << (dspec.n - k)
    return not bool(np.any(dspec.numerators % step))


def parseval_gap(spec: Spectrum, f: TruthTable | RealTable) -> float:
    """|sum of squared coefficients - E[f^2]| under the spectrum's measure."""
    if f.n != spec.n:
        raise InputError("function and spectrum sizes differ")
    vals = f.sign_values()
    energy = float(np.sum(measure_weights(f.n, spec.p) * vals * vals))
    return abs(float(np.sum(spec.squares())) - energy)


# ---------------------------------------------------------------------------
# serialization
#
# JSON: {"n": ..., "p": ..., "coeffs": [...]} in mask order.
# Binary: 8-byte magic, u32 little-endian n, f64 little-endian p, then
# 2**n little-endian f64 coefficients.  Binary roundtrips are bit exact.

_MAGIC = b"CUBEFSP1"


def spectrum_to_json(spec: Spectrum) -> str:
    return json.dumps(
        {"n": spec.n, "p": spec.p, "coeffs": [float(c) for c in spec.coeffs]}
    )


def spectrum_from_json(text: str) -> Spectrum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad spectrum JSON: {exc}") from exc
    if not isinstance(obj, dict) or not {"n", "p", "coeffs"} <= set(obj):
        raise InputError('spectrum JSON must carry "n", "p" and "coeffs"')
    return Spectrum(int(obj["n"]), float(obj["p"]), np.asarray(obj["coeffs"], dtype=np.float64))


def save_spectrum_json(spec: Spectrum, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(spectrum_to_json(spec))
        fh.write("\n")


def load_spectrum_json(path) -> Spectrum:
    with open(path, "r", encoding="ascii") as fh:
        return spectrum_from_json(fh.read())


def spectrum_to_bytes(spec: Spectrum) -> bytes:
    head = _MAGIC + struct.pack("<I", spec.n) + struct.pack("<d", spec.p)
    body = np.ascontiguousarray(spec.coeffs, dtype="<f8").tobytes()
    return head + body


def spectrum_from_bytes(data: bytes) -> Spectrum:
    head = len(_MAGIC) + 4 + 8
    if len(data) < head or data[: len(_MAGIC)] != _MAGIC:
        raise InputError("not a spectrum file (bad magic)")
    (n,) = struct.unpack_from("<I", data, len(_MAGIC))
    (p,) = struct.unpack_from("<d", data, len(_MAGIC) + 4)
    if n < 1 or n > 48:
        raise InputError(f"corrupt spectrum file: n={n}")
    expected = head + (1 << n) * 8
    if len(data) != expected:
        raise InputError(
            f"corrupt spectrum file: expected {expected} bytes, got {len(data)}"
        )
    coeffs = np.frombuffer(data, dtype="<f8", offset=head).astype(np.float64)
    return Spectrum(int(n), float(p), coeffs)


def save_spectrum_binary(spec: Spectrum, path) -> None:
    with open(path, "wb") as fh:
        fh.write(spectrum_to_bytes(spec))


def load_spectrum_binary(path) -> Spectrum:
    with open(path, "rb") as fh:
        return spectrum_from_bytes(fh.read())
