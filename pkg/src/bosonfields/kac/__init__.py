from .distributions import (
    AtomKac,
    DivisibilityReport,
    KacDistribution,
    ShiftedExponentialKac,
    condensate_factor,
    convolution_grid,
    empirical_laplace,
    factorised_laplace,
    infinite_divisibility_probe,
    kac_convolve_check,
    kac_kernel,
    kac_laplace,
    kac_sample,
)
from .cli import kac as kac_cli


__all__ = [
    "AtomKac",
    "DivisibilityReport",
    "KacDistribution",
    "ShiftedExponentialKac",
    "condensate_factor",
    "convolution_grid",
    "empirical_laplace",
    "factorised_laplace",
    "infinite_divisibility_probe",
    "kac_cli",
    "kac_convolve_check",
    "kac_kernel",
    "kac_laplace",
    "kac_sample",
]
