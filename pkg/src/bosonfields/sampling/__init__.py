from .condensate import CondensateProfile, CondensateSpec, FlatProfile, GroundStateProfile
from .count_law import count_law, count_mean
from .cox import (
    Intensity,
    PointConfiguration,
    sample_configuration,
    sample_intensity,
    thin_poisson,
)
from .estimators import (
    agrees_with,
    chi_square_counts,
    exponential_ks,
    first_moment,
    jackknife_mean,
    laplace_empirical,
    laplace_from_configurations,
    z_score,
)
from .fredholm import constant_laplace_product, det_factorization_gap, laplace_closed
from .limit_process import LimitEmbedding, embed_limit_kernel, sample_limit_process
from .cli import sample as sample_cli


__all__ = [
    "CondensateProfile",
    "CondensateSpec",
    "FlatProfile",
    "GroundStateProfile",
    "Intensity",
    "LimitEmbedding",
    "PointConfiguration",
    "agrees_with",
    "chi_square_counts",
    "constant_laplace_product",
    "count_law",
    "count_mean",
    "det_factorization_gap",
    "embed_limit_kernel",
    "exponential_ks",
    "first_moment",
    "jackknife_mean",
    "laplace_closed",
    "laplace_empirical",
    "laplace_from_configurations",
    "sample_cli",
    "sample_configuration",
    "sample_intensity",
    "sample_limit_process",
    "thin_poisson",
    "z_score",
]
