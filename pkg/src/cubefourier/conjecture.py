"""Entropy/influence bound checking, exhaustive sweeps, and experiments.

The central quantity is the ratio of spectral entropy to total influence.
At the uniform measure the conjectured statement is Ent(f) <= C * I(f) for
a universal C; the checks here record the ratio, compare the entropy
against the bounds that are actually proven, and flag any violation of a
proven bound (which would indicate a software defect, not new mathematics).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .boolfn import (
    Bias,
    GraphPropertySpec,
    TruthTable,
    as_bias,
    clique_indicator,
    critical_p0,
    mask_array,
    popcounts,
    table_to_hex,
)
from .config import check_table_size, get_threads
from .errors import InputError
from .spectral import (
    degree as spectral_degree,
    influence_vector,
    level_profile,
    measure_weights,
    min_support,
    parseval_gap,
    spectral_entropy,
    total_influence_spectral,
    transform,
)

__all__ = [
    "binary_entropy",
    "ei_ratio",
    "entropy_upper_bounds",
    "AnalysisReport",
    "analyze",
    "SweepResult",
    "exhaustive_sweep",
    "write_sweep_csv",
    "CliqueReport",
    "clique_experiment",
    "min_support_check",
]

PROVEN_BOUND_SLACK = 1e-9


def binary_entropy(x: float) -> float:
    """h(x) in bits; h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise InputError(f"binary entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def ei_ratio(entropy: float, influence: float, p: float = 0.5) -> float | None:
    """Entropy/influence ratio, normalised for the measure.

    At p = 1/2 this is plain Ent/I.  At other biases the influence is
    scaled by p log2(1/p), the natural unit in which the biased analogue
    of the conjecture is phrased.  Constant functions have no ratio.
    """
    if influence <= 0.0:
        return None
    if p == 0.5:
        return entropy / influence
    return entropy / (p * math.log2(1.0 / p) * influence)


def entropy_upper_bounds(n: int, influence: float, infl_vec=None) -> dict:
    """The proven upper bounds for spectral entropy at the uniform measure.

    Returns h_bound (sum of binary entropies of coordinate influences,
    present when ``infl_vec`` is given), proof_form 2I(1 + log2 n - log2 I),
    its weaker displayed variant 2I(log2 n - log2 I) which is recorded but
    never asserted, and the additive bound (log2 n + 1) I + 1.
    """
    out: dict[str, float | None] = {}
    if infl_vec is not None:
        out["h_bound"] = float(sum(binary_entropy(float(x)) for x in infl_vec))
    else:
        out["h_bound"] = None
    if influence > 0.0:
        log_term = math.log2(n) - math.log2(influence)
        out["proof_form"] = 2.0 * influence * (1.0 + log_term)
        out["displayed_form"] = 2.0 * influence * log_term
    else:
        out["proof_form"] = 0.0
        out["displayed_form"] = 0.0
    out["logn_bound"] = (math.log2(n) + 1.0) * influence + 1.0
    return out


def proven_bound_violations(
    n: int,
    entropy: float,
    influence: float,
    infl_vec=None,
    slack: float = PROVEN_BOUND_SLACK,
) -> list[str]:
    """Names of proven bounds the given numbers violate (should be empty)."""
    bounds = entropy_upper_bounds(n, influence, infl_vec)
    bad = []
    for name in ("h_bound", "proof_form", "logn_bound"):
        limit = bounds[name]
        if limit is not None and entropy > limit + slack:
            bad.append(name)
    return bad


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the analyzer computes for one function at one bias."""

    n: int
    p: float
    entropy: float
    influence: float
    influence_vec: tuple[float, ...]
    ratio: float | None
    bounds: dict
    violations: tuple[str, ...]
    degree: int
    level_weights: tuple[float, ...]
    support_size: int
    support_captured: float
    epsilon: float
    parseval: float
    claim_constant: float | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "entropy": self.entropy,
            "influence": self.influence,
            "influence_per_coordinate": list(self.influence_vec),
            "ei_ratio": self.ratio,
            "bounds": dict(self.bounds),
            "violations": list(self.violations),
            "degree": self.degree,
            "level_weights": list(self.level_weights),
            "min_support": {
                "epsilon": self.epsilon,
                "size": self.support_size,
                "captured": self.support_captured,
            },
            "parseval_gap": self.parseval,
            "claim_constant": self.claim_constant,
        }


def analyze(
    f: TruthTable,
    p=0.5,
    epsilon: float = 1e-2,
    threads: int | None = None,
) -> AnalysisReport:
    """Full spectral report: entropy, influences, ratio, bounds, support."""
    bias = as_bias(p)
    spec = transform(f, bias, threads=threads)
    ent = spectral_entropy(spec)
    infl = total_influence_spectral(spec)
    ivec = influence_vector(f, bias)
    profile = level_profile(spec)
    masks, captured = min_support(spec, epsilon)
    if bias.p == 0.5:
        bounds = entropy_upper_bounds(f.n, infl, ivec)
        violations = tuple(proven_bound_violations(f.n, ent, infl, ivec))
        claim = None
    else:
        # The proven bounds are uniform-measure statements; at other biases
        # only the conjectured normalisation is recorded.
        bounds = {}
        violations = ()
        claim = None
        if f.n >= 2 and infl > 0.0:
            denom = bias.p * (1.0 - bias.p) * math.log2(f.n) * infl
            claim = ent / denom if denom > 0.0 else None
    return AnalysisReport(
        n=f.n,
        p=bias.p,
        entropy=ent,
        influence=infl,
        influence_vec=tuple(float(x) for x in ivec),
        ratio=ei_ratio(ent, infl, bias.p),
        bounds=bounds,
        violations=violations,
        degree=spectral_degree(spec),
        level_weights=tuple(float(w) for w in profile.weights),
        support_size=int(masks.size),
        support_captured=captured,
        epsilon=epsilon,
        parseval=parseval_gap(spec, f),
        claim_constant=claim,
    )


# ---------------------------------------------------------------------------
# sweeps over whole function classes


@dataclass
class SweepResult:
    """Per-function statistics for a sweep at one bias."""

    n: int
    p: float
    exhaustive: bool
    function_ids: np.ndarray  # table encodings, bit at mask j = (id >> j) & 1
    entropy: np.ndarray
    influence: np.ndarray
    ratio: np.ndarray  # NaN where undefined
    h_bound: np.ndarray
    logn_bound: np.ndarray
    violations: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return int(self.function_ids.size)

    def max_ratio(self) -> tuple[float, str]:
        """Largest entropy/influence ratio and the hex id of its function."""
        if not np.any(np.isfinite(self.ratio)):
            return float("nan"), ""
        idx = int(np.nanargmax(self.ratio))
        return float(self.ratio[idx]), self._hex(int(self.function_ids[idx]))

    def max_claim_constant(self) -> float | None:
        """Largest observed Ent / (p(1-p) log2(n) I) over the sweep.

        This is the constant the biased form of the conjecture would need;
        it is measured, never asserted, and undefined at n = 1 or for
        sweeps where no function has positive influence.
        """
        if self.n < 2:
            return None
        scale = self.p * (1.0 - self.p) * math.log2(self.n)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = np.where(self.influence > 0, self.entropy / (scale * self.influence), np.nan)
        if not np.any(np.isfinite(c)):
            return None
        return float(np.nanmax(c))

    def _hex(self, fid: int) -> str:
        return _function_hex(self.n, fid)


def _function_hex(n: int, fid: int) -> str:
    """Hex id matching the truth-table text format (mask 0 = most significant)."""
    size = 1 << n
    value = 0
    for j in range(size):
        value = (value << 1) | ((fid >> j) & 1)
    return format(value, f"0{(size + 3) // 4}x")


def _table_from_id(n: int, fid: int) -> TruthTable:
    masks = mask_array(n)
    return TruthTable(n, ((fid >> masks) & 1).astype(np.uint8))


def _sweep_chunk(n: int, p: float, ids: np.ndarray) -> dict:
    """Statistics for one batch of function ids, fully vectorised.

    Works on a (batch, 2**n) matrix and runs the butterfly stages across
    the whole batch at once; the arithmetic per function is identical to
    the single-function path, so results do not depend on batching.
    """
    size = 1 << n
    masks = mask_array(n)
    bits = ((ids[:, None] >> masks[None, :]) & 1).astype(np.uint8)
    vals = 1.0 - 2.0 * bits.astype(np.float64)

    coeffs = vals.copy()
    if p == 0.5:
        w00, w01, w10, w11 = 0.5, 0.5, 0.5, -0.5
    else:
        c = math.sqrt(p * (1.0 - p))
        w00, w01, w10, w11 = 1.0 - p, p, c, -c
    for i in range(n):
        h = 1 << i
        a = coeffs.reshape(coeffs.shape[0], -1, 2, h)
        lo = a[:, :, 0, :].copy()
        hi = a[:, :, 1, :]
        a[:, :, 0, :] = w00 * lo + w01 * hi
        a[:, :, 1, :] = w10 * lo + w11 * hi

    squares = coeffs * coeffs
    safe = np.where(squares > 0.0, squares, 1.0)
    ent = -np.sum(squares * np.log2(safe), axis=1) + 0.0

    levels = popcounts(masks).astype(np.float64)
    infl = np.sum(squares * levels[None, :], axis=1) / (4.0 * p * (1.0 - p))

    # per-coordinate influences through the crossing probabilities
    ivecs = np.empty((ids.size, n), dtype=np.float64)
    mu = measure_weights(n, p)
    for i in range(n):
        flipped = bits[:, masks ^ (1 << i)]
        diff = bits != flipped
        ivecs[:, i] = diff @ mu

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(infl > 0.0, ent / infl, np.nan)

    hvals = np.where(
        (ivecs > 0.0) & (ivecs < 1.0),
        -(ivecs * np.log2(np.where(ivecs > 0.0, ivecs, 1.0)))
        - ((1.0 - ivecs) * np.log2(np.where(ivecs < 1.0, 1.0 - ivecs, 1.0))),
        0.0,
    )
    h_bound = np.sum(hvals, axis=1)
    logn_bound = (math.log2(n) + 1.0) * infl + 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        proof = np.where(
            infl > 0.0,
            2.0 * infl * (1.0 + math.log2(n) - np.log2(np.where(infl > 0.0, infl, 1.0))),
            0.0,
        )

    bad = np.zeros(ids.size, dtype=bool)
    if p == 0.5:
        bad |= ent > h_bound + PROVEN_BOUND_SLACK
        bad |= ent > proof + PROVEN_BOUND_SLACK
        bad |= ent > logn_bound + PROVEN_BOUND_SLACK
    return {
        "ids": ids,
        "entropy": ent,
        "influence": infl,
        "ratio": ratio,
        "h_bound": h_bound,
        "logn_bound": logn_bound,
        "bad": bad,
    }


SWEEP_CHUNK = 4096


def exhaustive_sweep(
    n: int,
    p: float = 0.5,
    sample: int | None = None,
    seed: int = 0,
    threads: int | None = None,
) -> SweepResult:
    """Statistics for every function on n variables (or a random sample).

    Exhaustive mode enumerates all 2**(2**n) functions and is limited to
    n <= 4.  Larger n must pass ``sample``; function ids are then drawn
    from a seeded PCG64 stream.  Work is cut into fixed-size chunks and
    merged in order, so the output is identical for any thread count.
    """
    if n < 1:
        raise InputError("sweep needs at least one variable")
    if not 0.0 < p < 1.0:
        raise InputError("bias must lie strictly between 0 and 1")
    if sample is None:
        if n > 4:
            raise InputError(
                "exhaustive sweeps are limited to n <= 4; pass a sample size"
            )
        total = 1 << (1 << n)
        all_ids = np.arange(total, dtype=np.int64)
        exhaustive = True
    else:
        if sample < 1:
            raise InputError("sample size must be positive")
        check_table_size(n, "sweep table")
        rng = np.random.Generator(np.random.PCG64(seed))
        size = 1 << n
        if size <= 62:
            all_ids = rng.integers(0, 1 << size, size=sample, dtype=np.int64)
        else:
            raise InputError("sampled sweeps support n <= 5")
        exhaustive = False

    chunks = [
        all_ids[start : start + SWEEP_CHUNK]
        for start in range(0, all_ids.size, SWEEP_CHUNK)
    ]
    nthreads = get_threads() if threads is None else max(1, int(threads))
    if nthreads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            parts = list(pool.map(lambda ids: _sweep_chunk(n, p, ids), chunks))
    else:
        parts = [_sweep_chunk(n, p, ids) for ids in chunks]

    result = SweepResult(
        n=n,
        p=p,
        exhaustive=exhaustive,
        function_ids=np.concatenate([c["ids"] for c in parts]),
        entropy=np.concatenate([c["entropy"] for c in parts]),
        influence=np.concatenate([c["influence"] for c in parts]),
        ratio=np.concatenate([c["ratio"] for c in parts]),
        h_bound=np.concatenate([c["h_bound"] for c in parts]),
        logn_bound=np.concatenate([c["logn_bound"] for c in parts]),
    )
    bad = np.concatenate([c["bad"] for c in parts])
    for idx in np.nonzero(bad)[0]:
        fid = int(result.function_ids[idx])
        result.violations.append(
            {
                "function_hex": _function_hex(n, fid),
                "entropy": float(result.entropy[idx]),
                "influence": float(result.influence[idx]),
            }
        )
    return result


def write_sweep_csv(result: SweepResult, path) -> None:
    """One row per function: hex id, entropy, influence, ratio, two bounds."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["function_hex", "entropy", "influence", "ratio", "h_bound", "logn_bound"]
        )
        for k in range(result.count):
            ratio = result.ratio[k]
            writer.writerow(
                [
                    _function_hex(result.n, int(result.function_ids[k])),
                    f"{result.entropy[k]:.12g}",
                    f"{result.influence[k]:.12g}",
                    "" if not np.isfinite(ratio) else f"{ratio:.12g}",
                    f"{result.h_bound[k]:.12g}",
                    f"{result.logn_bound[k]:.12g}",
                ]
            )


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class CliqueReport:
    """Spectral data of the clique indicator at its critical bias."""

    n_vertices: int
    r: int
    n_edges: int
    p0: float
    equation_residual: float
    entropy: float
    influence: float
    union_bound: float
    union_bound_holds: bool
    clique_coefficients: tuple[float, ...]
    coefficient_spread: float
    ratio: float | None

    def to_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "r": self.r,
            "n_edges": self.n_edges,
            "p0": self.p0,
            "equation_residual": self.equation_residual,
            "entropy": self.entropy,
            "influence": self.influence,
            "union_bound": self.union_bound,
            "union_bound_holds": self.union_bound_holds,
            "clique_coefficients": list(self.clique_coefficients),
            "coefficient_spread": self.coefficient_spread,
            "ei_ratio": self.ratio,
        }


def clique_experiment(
    n_vertices: int, r: int, threads: int | None = None
) -> CliqueReport:
    """Analyse K_r-containment at the bias where E[#cliques] = 1/2.

    The total influence at that bias is at most r(r-1)/(4 p0) by a union
    bound, with no asymptotic slack, so the comparison is exact enough to
    assert.  By vertex symmetry all coefficients on clique edge-sets agree.
    """
    spec_g = GraphPropertySpec(n_vertices, r)
    f = clique_indicator(spec_g)
    bias = critical_p0(spec_g)
    subsets = math.comb(n_vertices, r)
    exponent = math.comb(r, 2)
    residual = abs(subsets * bias.p**exponent - 0.5)

    sp = transform(f, bias, threads=threads)
    ent = spectral_entropy(sp)
    infl = total_influence_spectral(sp)
    union = r * (r - 1) / (4.0 * bias.p)
    coeffs = tuple(float(sp.coeffs[msk]) for msk in spec_g.clique_edge_masks())
    return CliqueReport(
        n_vertices=n_vertices,
        r=r,
        n_edges=spec_g.n_edges,
        p0=bias.p,
        equation_residual=residual,
        entropy=ent,
        influence=infl,
        union_bound=union,
        union_bound_holds=bool(infl <= union + PROVEN_BOUND_SLACK),
        clique_coefficients=coeffs,
        coefficient_spread=float(max(coeffs) - min(coeffs)),
        ratio=ei_ratio(ent, infl, bias.p),
    )


def min_support_check(f: TruthTable, p=0.5, epsilon: float = 1e-2, threads=None) -> dict:
    """Size of the epsilon-support against total influence.

    Records log2 |B_eps| / I_p; the conjectured statement makes this
    bounded in terms of 1/eps, so the number is reported, never asserted.
    """
    bias = as_bias(p)
    sp = transform(f, bias, threads=threads)
    masks, captured = min_support(sp, epsilon)
    infl = total_influence_spectral(sp)
    size = int(masks.size)
    log_size = math.log2(size) if size else 0.0
    return {
        "epsilon": epsilon,
        "support_size": size,
        "captured": captured,
        "influence": infl,
        "log_size_over_influence": (log_size / infl) if infl > 0 else None,
    }
