"""Reduction from a dyadically biased cube to the uniform cube.

A function f on n variables at bias p = t/2**m is pulled back to a function
g on n*m uniform variables: each original coordinate i is decided by an
m-bit block, and reads 1 exactly when the block's integer value lies in the
top t of its 2**m possibilities.  Blocks occupy reduced mask bits
(i-1)*m .. i*m-1.

The construction preserves all the spectral structure this package checks:
squared coefficients of g aggregate exactly to those of f (per original
subset), total influence grows by at most the factor 6 p floor(log2(1/p))
when p <= 1/2, and spectral entropy never decreases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfn import Bias, RealTable, TruthTable
from .config import check_table_size
from .errors import InputError
from .spectral import (
    Spectrum,
    exact_transform,
    spectral_entropy,
    total_influence_spectral,
    transform,
)

__all__ = [
    "ReductionLayout",
    "layout_for",
    "reduce_table",
    "block_projection",
    "floor_log2_reciprocal",
    "verify_red0",
    "verify_red_fk",
    "verify_entropy_monotone",
    "reduction_report",
]


@dataclass(frozen=True)
class ReductionLayout:
    """Index bookkeeping for one reduction instance."""

    n_original: int
    t: int
    m: int

    def __post_init__(self):
        if self.n_original < 1:
            raise InputError("need at least one original variable")
        if self.m < 1 or not 1 <= self.t < (1 << self.m):
            raise InputError("reduction needs integers 1 <= t < 2^m")
        check_table_size(self.n_reduced, "reduced table")

    @property
    def n_reduced(self) -> int:
        return self.n_original * self.m

    @property
    def p(self) -> Fraction:
        return Fraction(self.t, 1 << self.m)

    @property
    def threshold(self) -> int:
        """Block values >= threshold make the original coordinate read 1."""
        return (1 << self.m) - self.t

    def block_value(self, y: int, i: int) -> int:
        """Integer value of block i (for original coordinate i) inside mask y."""
        return (y >> ((i - 1) * self.m)) & ((1 << self.m) - 1)

    def original_masks(self, y: np.ndarray) -> np.ndarray:
        """Original input mask selected by each reduced input mask."""
        y = np.asarray(y, dtype=np.int64)
        block = np.int64((1 << self.m) - 1)
        out = np.zeros_like(y)
        for i in range(self.n_original):
            vals = (y >> np.int64(i * self.m)) & block
            out |= (vals >= self.threshold).astype(np.int64) << np.int64(i)
        return out


def _exact_bias(p: Bias) -> tuple[int, int]:
    if not isinstance(p, Bias) or not p.is_exact:
        raise InputError(
            "the reduction is defined only for exact dyadic biases t/2^m; "
            "construct one with Bias.exact(t, m)"
        )
    return p.t, p.m


def layout_for(n: int, p: Bias) -> ReductionLayout:
    t, m = _exact_bias(p)
    return ReductionLayout(n, t, m)


def reduce_table(f: TruthTable | RealTable, p: Bias):
    """Pull f back to the uniform cube on n*m variables."""
    layout = layout_for(f.n, p)
    y = np.arange(1 << layout.n_reduced, dtype=np.int64)
    x = layout.original_masks(y)
    if isinstance(f, TruthTable):
        return TruthTable(layout.n_reduced, f.bits[x])
    return RealTable(layout.n_reduced, f.values[x])


def block_projection(layout: ReductionLayout, masks: np.ndarray) -> np.ndarray:
    """Original subset mask whose block pattern matches each reduced mask.

    A reduced subset S projects to the original subset containing exactly
    the coordinates whose block in S is nonempty.
    """
    masks = np.asarray(masks, dtype=np.int64)
    block = np.int64((1 << layout.m) - 1)
    out = np.zeros_like(masks)
    for i in range(layout.n_original):
        nz = ((masks >> np.int64(i * layout.m)) & block) != 0
        out |= nz.astype(np.int64) << np.int64(i)
    return out


def floor_log2_reciprocal(t: int, m: int) -> int:
    """floor(log2(2^m / t)) computed in integer arithmetic."""
    return ((1 << m) // t).bit_length() - 1


def _reduced_spectrum(g) -> Spectrum:
    if isinstance(g, TruthTable):
        return exact_transform(g).to_spectrum()
    return transform(g, 0.5)


def verify_red0(
    f: TruthTable | RealTable,
    p: Bias,
    g=None,
    f_spec: Spectrum | None = None,
    g_spec: Spectrum | None = None,
) -> float:
    """Max gap between aggregated reduced squares and original squares.

    Checks every original subset at once: squared coefficients of the
    reduced function, grouped by block projection, must reproduce the
    squared coefficients of f exactly.
    """
    layout = layout_for(f.n, p)
    if g is None:
        g = reduce_table(f, p)
    if g_spec is None:
        g_spec = _reduced_spectrum(g)
    if f_spec is None:
        f_spec = transform(f, p)
    proj = block_projection(layout, np.arange(1 << layout.n_reduced, dtype=np.int64))
    grouped = np.bincount(proj, weights=g_spec.squares(), minlength=1 << f.n)
    return float(np.max(np.abs(grouped - f_spec.squares())))


def verify_red_fk(
    f: TruthTable | RealTable,
    p: Bias,
    g=None,
    f_spec: Spectrum | None = None,
    g_spec: Spectrum | None = None,
    slack: float = 1e-9,
) -> tuple[float, float, bool]:
    """Check uniform influence of g against 6 p floor(log2(1/p)) I_p(f).

    The bound is proven for p <= 1/2; above that the floor term vanishes
    and the comparison is reported but not meaningful.
    """
    t, m = _exact_bias(p)
    if g is None:
        g = reduce_table(f, p)
    if g_spec is None:
        g_spec = _reduced_spectrum(g)
    if f_spec is None:
        f_spec = transform(f, p)
    lhs = total_influence_spectral(g_spec)
    rhs = 6.0 * (t / (1 << m)) * floor_log2_reciprocal(t, m) * total_influence_spectral(f_spec)
    return lhs, rhs, bool(lhs <= rhs + slack)


def verify_entropy_monotone(
    f: TruthTable | RealTable,
    p: Bias,
    g=None,
    f_spec: Spectrum | None = None,
    g_spec: Spectrum | None = None,
    slack: float = 1e-9,
) -> tuple[float, float, bool]:
    """Spectral entropy may only grow under the reduction (up to slack)."""
    if g is None:
        g = reduce_table(f, p)
    if g_spec is None:
        g_spec = _reduced_spectrum(g)
    if f_spec is None:
        f_spec = transform(f, p)
    reduced = spectral_entropy(g_spec)
    original = spectral_entropy(f_spec)
    return reduced, original, bool(reduced >= original - slack)


def reduction_report(f: TruthTable | RealTable, p: Bias) -> dict:
    """Run all three reduction checks once and collect them in a dict."""
    t, m = _exact_bias(p)
    g = reduce_table(f, p)
    g_spec = _reduced_spectrum(g)
    f_spec = transform(f, p)
    gap = verify_red0(f, p, g=g, f_spec=f_spec, g_spec=g_spec)
    lhs, rhs, fk_holds = verify_red_fk(f, p, g=g, f_spec=f_spec, g_spec=g_spec)
    reduced_ent, original_ent, ent_holds = verify_entropy_monotone(
        f, p, g=g, f_spec=f_spec, g_spec=g_spec
    )
    return {
        "p": t / (1 << m),
        "t": t,
        "m": m,
        "red0_max_gap": gap,
        "red_fk": {"lhs": lhs, "rhs": rhs, "holds": fk_holds},
        "entropy": {"reduced": reduced_ent, "original": original_ent, "holds": ent_holds},
    }
