from .finite_l import (
    ConvergenceReport,
    DensityTable,
    convergence_study,
    finite_L_scaled_density,
    line_grid,
)
from .limit_fields import (
    FieldPairing,
    LimitDensity,
    LimitRFSpec,
    MixtureDensity,
    SquaredGaussianDensity,
    beam_r_kernel,
    density_values,
    fixture_functions,
    limit_density_profile,
    limit_gf,
    limit_spec_for,
    nystrom_log_det,
    sample_limit_density,
    sine_log_det,
)
from .r_kernel import RKernel, eigenfunctions, r_kernel
from .transforms import Scale, ScaledMeasure, ScalingTransform, apply_scaling
from .cli import scaled as scaled_cli


__all__ = [
    "ConvergenceReport",
    "DensityTable",
    "FieldPairing",
    "LimitDensity",
    "LimitRFSpec",
    "MixtureDensity",
    "RKernel",
    "Scale",
    "ScaledMeasure",
    "ScalingTransform",
    "SquaredGaussianDensity",
    "apply_scaling",
    "beam_r_kernel",
    "convergence_study",
    "density_values",
    "eigenfunctions",
    "finite_L_scaled_density",
    "fixture_functions",
    "limit_density_profile",
    "limit_gf",
    "limit_spec_for",
    "line_grid",
    "nystrom_log_det",
    "r_kernel",
    "sample_limit_density",
    "scaled_cli",
    "sine_log_det",
]
