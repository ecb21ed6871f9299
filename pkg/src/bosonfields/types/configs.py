"""
Models for the JSON config files read by the CLI.

Each subcommand validates its config against one of the ``*Config``
types at the bottom of this file, using ``nitrate.types.validate_type``.
"""

import typing


class ThermoConfig(typing.TypedDict):
    beta: float
    hbar: typing.NotRequired[float]
    mass: typing.NotRequired[float]


# Anisotropy profiles


class SlabProfileConfig(typing.TypedDict):
    kind: typing.Literal["slab"]
    alpha: float


class BeamProfileConfig(typing.TypedDict):
    kind: typing.Literal["beam"]
    gamma: float


class ExplicitProfileConfig(typing.TypedDict):
    kind: typing.Literal["explicit"]
    L1: float
    L2: float
    L3: float


ProfileConfig = SlabProfileConfig | BeamProfileConfig | ExplicitProfileConfig


# Gap schedules Δ(L)


class ConstantGapConfig(typing.TypedDict):
    kind: typing.Literal["constant"]
    delta: float


class ExponentialGapConfig(typing.TypedDict):
    """
    Δ(L) = prefactor · e^{−rate·L}
    """

    kind: typing.Literal["exponential"]
    rate: float
    prefactor: typing.NotRequired[float]


class VolumeGapConfig(typing.TypedDict):
    """
    Δ(L) = 1 / (weight · L³e^{2αL})
    """

    kind: typing.Literal["volume"]
    alpha: float
    weight: float


class PowerGapConfig(typing.TypedDict):
    """
    Δ(L) = coefficient / L^power
    """

    kind: typing.Literal["power"]
    coefficient: float
    power: float


GapScheduleConfig = (
    ConstantGapConfig | ExponentialGapConfig | VolumeGapConfig | PowerGapConfig
)


# Truncations and windows


class EnergyCutoffConfig(typing.TypedDict):
    kind: typing.Literal["energy"]
    energy: float


class ModeCountConfig(typing.TypedDict):
    kind: typing.Literal["modes"]
    count: int


TruncationConfig = EnergyCutoffConfig | ModeCountConfig


class WindowConfig(typing.TypedDict):
    lower: list[float]
    upper: list[float]


# Test functions used in Laplace functional studies


class ConstantFunctionConfig(typing.TypedDict):
    kind: typing.Literal["constant"]
    value: float


class GaussianBumpConfig(typing.TypedDict):
    """
    f(x) = height · exp(−|x − center|² / (2·width²)), restricted to
    the window.
    """

    kind: typing.Literal["gaussian_bump"]
    height: float
    center: list[float]
    width: float


LaplaceFunctionConfig = ConstantFunctionConfig | GaussianBumpConfig


# Asymptotic cases


class ConstantScheduleConfig(typing.TypedDict):
    kind: typing.Literal["constant"]
    value: float


class PowerScheduleConfig(typing.TypedDict):
    """
    B(L) = scale · L^{−p}
    """

    kind: typing.Literal["power"]
    p: float
    scale: typing.NotRequired[float]


class ExponentialScheduleConfig(typing.TypedDict):
    """
    B(L) = scale · e^{−c·L}
    """

    kind: typing.Literal["exponential"]
    c: float
    scale: typing.NotRequired[float]


BScheduleConfig = ConstantScheduleConfig | PowerScheduleConfig | ExponentialScheduleConfig


FormulaId = typing.Literal[
    "A1", "A2", "A3", "A7", "A8", "A9", "A10", "A11", "A12"
]


class AsymptoticCaseConfig(typing.TypedDict):
    formula: FormulaId
    A: typing.NotRequired[float]
    schedule: typing.NotRequired[BScheduleConfig]
    L_grid: typing.NotRequired[list[float]]


# Configs for each subcommand


class PhaseConfig(typing.TypedDict):
    profile: ProfileConfig
    thermo: ThermoConfig
    rho: typing.NotRequired[float]
    delta_schedule: typing.NotRequired[GapScheduleConfig]
    L_sequence: typing.NotRequired[list[float]]
    seed: typing.NotRequired[int]


class SampleConfig(typing.TypedDict):
    profile: ProfileConfig
    L: typing.NotRequired[float]
    thermo: ThermoConfig
    rho: typing.NotRequired[float]
    delta_schedule: typing.NotRequired[GapScheduleConfig]
    process: typing.NotRequired[typing.Literal["finite", "limit"]]
    bc: typing.NotRequired[typing.Literal["dirichlet", "periodic"]]
    truncation: typing.NotRequired[TruncationConfig]
    kappa: typing.NotRequired[float]
    condensate: typing.NotRequired[typing.Literal["ground", "flat"]]
    window: typing.NotRequired[WindowConfig]
    n_samples: int
    test_functions: typing.NotRequired[list[LaplaceFunctionConfig]]
    seed: typing.NotRequired[int]


class ScaledConfig(typing.TypedDict):
    profile: ProfileConfig
    thermo: ThermoConfig
    rho: typing.NotRequired[float]
    delta_schedule: typing.NotRequired[GapScheduleConfig]
    scale: typing.Literal["S", "D", "R", "I"]
    L_sequence: typing.NotRequired[list[float]]
    grid_points: typing.NotRequired[int]
    n_draws: typing.NotRequired[int]
    seed: typing.NotRequired[int]


class KacConfig(typing.TypedDict):
    thermo: ThermoConfig
    rho: float
    t_grid: typing.NotRequired[list[float]]
    n_samples: typing.NotRequired[int]
    divisibility_n: typing.NotRequired[int]
    seed: typing.NotRequired[int]


class AsymptoticsConfig(typing.TypedDict):
    cases: typing.NotRequired[list[AsymptoticCaseConfig]]
    seed: typing.NotRequired[int]
