"""Kernel density estimation with indirect cross-validation bandwidth
selection, selection-kernel theory, local bandwidths, and a Monte Carlo
comparison harness."""

from .crossval import (
    BandwidthSelection,
    icv_bandwidth,
    icv_capped,
    lscv,
    minimize_lscv,
    oversmoothed_bandwidth,
)
from .densities import DensityFunctionals, NormalMixture, standard_suite
from .estimation import (
    KernelEstimate,
    estimate_at,
    exact_ise,
    exact_mise,
    ise_optimal_bandwidth,
    mise_optimal_bandwidth,
)
from .kernels import (
    KernelClass,
    SelectionKernel,
    gaussian_kernel,
    model_kernel,
    model_params,
    robust_alpha_threshold,
)
from .localband import (
    LocalBandwidthFunction,
    average_squared_error,
    local_bandwidths,
    local_estimate,
    local_icv_criterion,
    smallest_local_minimizer,
)
from .mixtures import SignedGaussianMixture, gaussian
from .simulate import (
    ReplicationRecord,
    StudySummary,
    ingest,
    run_replication,
    run_study,
    summarize,
)
from .theory import (
    AsymptoticMSE,
    TheoryConstants,
    asymptotic_bandwidths,
    cd_product,
    mse_opt,
    optimal_alpha,
    relative_error_terms,
    sigma_opt,
    theory_constants,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
