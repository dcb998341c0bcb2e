"""Spectral analysis of Boolean functions on the (biased) discrete cube.

Fast in-place transforms, exact dyadic arithmetic at the uniform measure,
a biased-to-uniform reduction with verified invariants, virtual tensor
powers, and entropy/influence bound checking.
"""

from .boolfn import (
    Bias,
    GraphPropertySpec,
    RealTable,
    TruthTable,
    and_fn,
    clique_indicator,
    constant,
    critical_p0,
    dictator,
    discrete_derivative,
    format_truth_table,
    from_bits,
    load_truth_table,
    majority,
    mux3,
    or_fn,
    parity,
    parse_truth_table,
    random_function,
    save_truth_table,
    table_to_hex,
    tribes,
)
from .conjecture import (
    AnalysisReport,
    CliqueReport,
    SweepResult,
    analyze,
    binary_entropy,
    clique_experiment,
    ei_ratio,
    entropy_upper_bounds,
    exhaustive_sweep,
    min_support_check,
    write_sweep_csv,
)
from .kernels import backend_name
from .reduction import (
    ReductionLayout,
    reduce_table,
    reduction_report,
    verify_entropy_monotone,
    verify_red0,
    verify_red_fk,
)
from .spectral import (
    DyadicSpectrum,
    LevelProfile,
    Spectrum,
    degree,
    dyadic_check,
    exact_transform,
    influence_combinatorial,
    influence_vector,
    inverse_transform,
    level_profile,
    load_spectrum_binary,
    load_spectrum_json,
    min_support,
    parseval_gap,
    reconstruct_exact,
    save_spectrum_binary,
    save_spectrum_json,
    spectral_entropy,
    tail_weight,
    total_influence_combinatorial,
    total_influence_spectral,
    transform,
)
from .tensor import (
    VirtualPowerStats,
    profile_convolve,
    profile_power,
    tail_decay,
    tensor_power,
    tensor_product,
    virtual_power_stats,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # function construction
    "TruthTable",
    "RealTable",
    "Bias",
    "GraphPropertySpec",
    "from_bits",
    "constant",
    "dictator",
    "parity",
    "majority",
    "tribes",
    "and_fn",
    "or_fn",
    "mux3",
    "clique_indicator",
    "critical_p0",
    "random_function",
    "discrete_derivative",
    "parse_truth_table",
    "format_truth_table",
    "load_truth_table",
    "save_truth_table",
    "table_to_hex",
    # spectra
    "Spectrum",
    "DyadicSpectrum",
    "LevelProfile",
    "transform",
    "inverse_transform",
    "exact_transform",
    "reconstruct_exact",
    "spectral_entropy",
    "total_influence_spectral",
    "total_influence_combinatorial",
    "influence_combinatorial",
    "influence_vector",
    "level_profile",
    "tail_weight",
    "degree",
    "min_support",
    "dyadic_check",
    "parseval_gap",
    "save_spectrum_json",
    "load_spectrum_json",
    "save_spectrum_binary",
    "load_spectrum_binary",
    # reduction
    "ReductionLayout",
    "reduce_table",
    "reduction_report",
    "verify_red0",
    "verify_red_fk",
    "verify_entropy_monotone",
    # tensor
    "tensor_product",
    "tensor_power",
    "profile_convolve",
    "profile_power",
    "tail_decay",
    "VirtualPowerStats",
    "virtual_power_stats",
    # conjecture checks
    "AnalysisReport",
    "SweepResult",
    "CliqueReport",
    "analyze",
    "binary_entropy",
    "ei_ratio",
    "entropy_upper_bounds",
    "exhaustive_sweep",
    "write_sweep_csv",
    "clique_experiment",
    "min_support_check",
]
