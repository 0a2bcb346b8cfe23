"""Skew-information uncertainty relations at desk scale.

Quantities (variance, the alpha skew-information family, metric-adjusted
correlation measures), every associated uncertainty inequality as a signed
margin, stored counterexample instances, and a deterministic fuzz harness
that stress-tests each bound inside and outside its validity region.
"""

from .fuzz import (
    FuzzReport,
    RandomModelConfig,
    TrialStream,
    run_fuzz,
    sample_density,
    sample_observable,
    scan_grid,
)
from .inequalities import (
    CheckResult,
    UnknownInequalityError,
    check_inequality,
    registry_ids,
    reproduce_example,
)
from .linalg import (
    DensityMatrix,
    Observable,
    SingularStateError,
    SpectralDecomposition,
    ValidationError,
    anticommutator,
    center,
    commutator,
    fractional_power,
    hermitian_eigendecompose,
    to_eigenbasis,
)
from .metric import MetricQuantities, corr_f, mean_pairing, metric_quantities, monotone_metric
from .monotone import (
    MonotoneFunction,
    ScalarCheckReport,
    check_scalar_inequality,
    bkm,
    rld,
    sld,
    wy,
    wyd,
)
from .skew import (
    AlphaGamma,
    corr_alpha,
    corr_alpha_gamma,
    corr_sym,
    covariance,
    cross_term,
    u_alpha,
    variance,
    wyd_j,
    wyd_skew_information,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaGamma",
    "CheckResult",
    "DensityMatrix",
    "FuzzReport",
    "MetricQuantities",
    "MonotoneFunction",
    "Observable",
    "RandomModelConfig",
    "ScalarCheckReport",
    "SingularStateError",
    "SpectralDecomposition",
    "TrialStream",
    "UnknownInequalityError",
    "ValidationError",
    "anticommutator",
    "bkm",
    "center",
    "check_inequality",
    "check_scalar_inequality",
    "commutator",
    "corr_alpha",
    "corr_alpha_gamma",
    "corr_f",
    "corr_sym",
    "covariance",
    "cross_term",
    "fractional_power",
    "hermitian_eigendecompose",
    "mean_pairing",
    "metric_quantities",
    "monotone_metric",
    "registry_ids",
    "reproduce_example",
    "rld",
    "run_fuzz",
    "sample_density",
    "sample_observable",
    "scan_grid",
    "sld",
    "to_eigenbasis",
    "u_alpha",
    "variance",
    "wy",
    "wyd",
    "wyd_j",
    "wyd_skew_information",
]
