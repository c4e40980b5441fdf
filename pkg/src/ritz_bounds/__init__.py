"""Ritz values of real symmetric matrices and rigorous convergence bounds.

Lanczos with full reorthogonalization supplies the Ritz values; the bounds
module evaluates the classical extremal Chebyshev bounds and the
shifted-and-squared bounds that make interior eigenvalues next to spectral
voids tractable.  See the README for the benchmark experiment and CLI usage.
"""

from .bounds import (
    BoundCurve,
    InteriorBoundResult,
    KpsIngredients,
    ShiftChoice,
    ShiftedSpectrum,
    FAMILIES,
    bound_curve,
    interior_bound,
    kps_bound,
    kps_bound_lower_end,
    kps_ingredients,
    mu_ratio,
    optimize_shift,
    shift_spectrum,
)
from .chebyshev import cheb_eval, cheb_log_abs, cheb_log_growth
from .errors import (
    ConfigError,
    DegenerateGapError,
    DimensionMismatchError,
    OrderingAssumptionError,
    RitzBoundsError,
    ShiftAtTargetError,
    ZeroVectorError,
)
from .harness import (
    ConvergenceRecord,
    ExperimentConfig,
    TargetSpec,
    emit_csv,
    figure1_config,
    figure1_report,
    load_config,
    run_experiment,
)
from .lanczos import (
    LanczosDecomposition,
    RitzSet,
    error_to_nearest,
    lanczos_decompose,
    ritz_sweep,
    ritz_vectors,
    tridiagonal_eigenvalues,
    tridiagonal_eigenvalues_bisect,
)
from .operators import (
    DenseSymmetricOperator,
    DiagonalOperator,
    LinearOperator,
    OverlapProfile,
    Spectrum,
    apply,
    orthonormalize_against,
    rayleigh_quotient,
)
from .spectra import (
    BandedSpectrumSpec,
    FIGURE1_SHIFT,
    Figure1SpectrumSpec,
    banded_spectrum,
    equal_overlap_start,
    figure1_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BandedSpectrumSpec",
    "BoundCurve",
    "ConfigError",
    "ConvergenceRecord",
    "DegenerateGapError",
    "DenseSymmetricOperator",
    "DiagonalOperator",
    "DimensionMismatchError",
    "ExperimentConfig",
    "FAMILIES",
    "FIGURE1_SHIFT",
    "Figure1SpectrumSpec",
    "InteriorBoundResult",
    "KpsIngredients",
    "LanczosDecomposition",
    "LinearOperator",
    "OrderingAssumptionError",
    "OverlapProfile",
    "RitzBoundsError",
    "RitzSet",
    "ShiftAtTargetError",
    "ShiftChoice",
    "ShiftedSpectrum",
    "Spectrum",
    "TargetSpec",
    "ZeroVectorError",
    "apply",
    "banded_spectrum",
    "bound_curve",
    "cheb_eval",
    "cheb_log_abs",
    "cheb_log_growth",
    "emit_csv",
    "equal_overlap_start",
    "error_to_nearest",
    "figure1_config",
    "figure1_report",
    "figure1_spectrum",
    "interior_bound",
    "kps_bound",
    "kps_bound_lower_end",
    "kps_ingredients",
    "lanczos_decompose",
    "load_config",
    "mu_ratio",
    "optimize_shift",
    "orthonormalize_against",
    "rayleigh_quotient",
    "ritz_sweep",
    "ritz_vectors",
    "run_experiment",
    "shift_spectrum",
    "tridiagonal_eigenvalues",
    "tridiagonal_eigenvalues_bisect",
    "__version__",
]
