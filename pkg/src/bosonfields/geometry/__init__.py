from .boxes import (
    AnisotropyProfile,
    BeamProfile,
    BoxGeometry,
    ExplicitProfile,
    SlabProfile,
    ThermoParams,
    box_from_profile,
    max_admissible_L,
)
from .heat_series import MeanAxis, PointAxis, diagonal_sum
from .kernels import (
    EnergyCutoff,
    ModeCount,
    TruncatedKernel,
    Truncation,
    build_kernel,
    kernel_diagonal,
    kernel_eval,
    kernel_matrix,
    limit_kernel,
)
from .regions import TestFunction, Window, constant_function, cosine_bump, gaussian_bump
from .spectrum import (
    Boundary,
    Mode,
    bose_factor,
    eigenfunction,
    eigenfunction_values,
    eigenvalue,
    occupation,
)


__all__ = [
    "AnisotropyProfile",
    "BeamProfile",
    "Boundary",
    "BoxGeometry",
    "EnergyCutoff",
    "ExplicitProfile",
    "MeanAxis",
    "Mode",
    "ModeCount",
    "PointAxis",
    "SlabProfile",
    "TestFunction",
    "ThermoParams",
    "TruncatedKernel",
    "Truncation",
    "Window",
    "bose_factor",
    "box_from_profile",
    "build_kernel",
    "constant_function",
    "cosine_bump",
    "diagonal_sum",
    "eigenfunction",
    "eigenfunction_values",
    "eigenvalue",
    "gaussian_bump",
    "kernel_diagonal",
    "kernel_eval",
    "kernel_matrix",
    "limit_kernel",
    "max_admissible_L",
    "occupation",
]
