from .asymptotics import asymptotic_ratio, asymptotic_rhs
from .haar import (
    DEFAULT_SEED,
    MomentEstimate,
    RngStream,
    haar_unitaries,
    monte_carlo,
    sample_haar_unitary,
    truncate,
    truncated_haar,
    truncated_samples,
)
from .kernels import (
    density_check,
    ginibre_kernel,
    kernel_convergence_report,
    neretin_density,
    radial_cdf_from_density,
    sz_diagonal_mass,
    sz_kernel,
)
from .moments import (
    DegenerateSpectrumWarning,
    exact_trace_moment,
    gaussian_limit_report,
    hall_product_mc,
    mc_trace_moment,
    mc_truncation_side,
    mc_unitary_side,
    moment_check,
    schur_eval,
    weiwettig_check,
)
