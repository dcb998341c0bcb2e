"""Tensor products and virtual tensor powers.

The product of two functions on disjoint variable sets multiplies their
+-1 values, so stored bits combine by XOR.  The first factor occupies the
low mask bits.  Spectral entropy and total influence are additive over
tensor factors, and the level profile of a power is the repeated
self-convolution of the base profile — which is why large powers can be
analysed "virtually", without materialising a 2**(N*n) table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfn import RealTable, TruthTable, as_bias
from .config import check_table_size
from .errors import InputError
from .spectral import (
    DyadicSpectrum,
    LevelProfile,
    Spectrum,
    exact_level_profile,
    exact_transform,
    level_profile,
    spectral_entropy,
    total_influence_spectral,
    transform,
)

__all__ = [
    "tensor_product",
    "tensor_power",
    "profile_convolve",
    "profile_power",
    "tail_decay",
    "VirtualPowerStats",
    "virtual_power_stats",
]


def tensor_product(f: TruthTable, g: TruthTable) -> TruthTable:
    """(f (x) g)(x, y) = f(x) * g(y) in +-1 values; f takes the low bits."""
    n = f.n + g.n
    check_table_size(n, "tensor product")
    low = np.tile(f.bits, 1 << g.n)
    high = np.repeat(g.bits, 1 << f.n)
    return TruthTable(n, low ^ high)


def tensor_power(f: TruthTable, N: int) -> TruthTable:
    if N < 1:
        raise InputError("tensor power needs N >= 1")
    check_table_size(f.n * N, "tensor power")
    out = f
    for _ in range(N - 1):
        out = tensor_product(out, f)
    return out


def profile_convolve(a: LevelProfile, b: LevelProfile) -> LevelProfile:
    """Level profile of a tensor product from the factors' profiles."""
    weights = np.convolve(a.weights, b.weights)
    exact = None
    if a.exact is not None and b.exact is not None:
        exact = _convolve_fractions(a.exact, b.exact)
        weights = np.array([float(x) for x in exact], dtype=np.float64)
    return LevelProfile(a.n + b.n, weights, exact=exact)


def _convolve_fractions(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return tuple(out)


def profile_power(base: LevelProfile, N: int) -> LevelProfile:
    if N < 1:
        raise InputError("profile power needs N >= 1")
    out = base
    for _ in range(N - 1):
        out = profile_convolve(out, base)
    return out


def tail_decay(profile: LevelProfile) -> np.ndarray:
    """tail(k) for k = 0 .. n: mass strictly above each level."""
    rev_cum = np.cumsum(profile.weights[::-1])[::-1]
    out = np.zeros(profile.n + 1, dtype=np.float64)
    out[: profile.n] = rev_cum[1:]
    return out


@dataclass(frozen=True)
class VirtualPowerStats:
    """Spectral summary of f**(x)N computed from f alone."""

    base_n: int
    N: int
    p: float
    entropy: float
    total_influence: float
    profile: LevelProfile

    @property
    def n(self) -> int:
        return self.base_n * self.N

    @property
    def ei_ratio(self) -> float | None:
        if self.total_influence <= 0.0:
            return None
        return self.entropy / self.total_influence

    def mean_level(self) -> float:
        return self.profile.mean_level()

    def level_variance(self) -> float:
        return self.profile.variance()


def virtual_power_stats(
    f: TruthTable,
    N: int,
    p=0.5,
    exact: bool = False,
    threads: int | None = None,
) -> VirtualPowerStats:
    """Entropy, influence and level profile of the N-th tensor power.

    Everything is derived from one transform of the base function: entropy
    and total influence are N times the base values, and the profile is the
    N-fold self-convolution.  With ``exact=True`` (uniform measure only) the
    profile is convolved in rational arithmetic.
    """
    if N < 1:
        raise InputError("tensor power needs N >= 1")
    bias = as_bias(p)
    if exact:
        if bias.p != 0.5:
            raise InputError("exact virtual powers are supported at p = 1/2 only")
        dspec = exact_transform(f, threads=threads)
        base_profile = exact_level_profile(dspec)
        spec: Spectrum | DyadicSpectrum = dspec
    else:
        spec = transform(f, bias, threads=threads)
        base_profile = level_profile(spec)
    return VirtualPowerStats(
        base_n=f.n,
        N=N,
        p=bias.p,
        entropy=N * spectral_entropy(spec),
        total_influence=N * total_influence_spectral(spec),
        profile=profile_power(base_profile, N),
    )
