import typing


# Types for the JSON files we write.


class BoxJson(typing.TypedDict):
    L1: float
    L2: float
    L3: float


class KernelJson(typing.TypedDict):
    modes: list[list[int]]
    occupations: list[float]
    box: BoxJson
    beta: float
    hbar: float
    mass: float
    delta: float
    bc: typing.Literal["dirichlet", "periodic"]
    tail_bound: float


Phase = typing.Literal["Normal", "TypeIII", "TypeI_plus_III", "TypeII", "TypeI"]


class ScheduleDescription(typing.TypedDict):
    kind: typing.Literal["constant", "exponential", "volume", "power"]
    formula: str
    coefficients: dict[str, float]
    delta_inf: float


class LimitEstimateJson(typing.TypedDict):
    value: float
    trend: float
    converged: bool


class PhaseReportJson(typing.TypedDict):
    phase: Phase
    rho: float | None
    rho_c: float
    rho_m: float | None
    rho_m_averaged: float | None
    kappa1: float | None
    kappa2: float | None
    kappa_tilde: float | None
    delta_schedule: ScheduleDescription | None
    extrapolation: dict[str, LimitEstimateJson] | None


class WindowJson(typing.TypedDict):
    lower: list[float]
    upper: list[float]


class ConfigurationJson(typing.TypedDict):
    """
    One line of a ``configurations.jsonl`` file.
    """

    index: int
    window: WindowJson
    points: list[list[float]]


class ChiSquareVerdict(typing.TypedDict):
    statistic: float
    degrees_of_freedom: int
    quantile_99: float
    p_value: float
    passed: bool


class AsymptoticVerdict(typing.TypedDict):
    formula: str
    schedule: str
    kind: typing.Literal["bounded", "envelope", "inequality"]
    passed: bool
    slope: float | None
    tolerance: float | None
    growth_exponent: float | None
    envelope_exponent: float | None
    notes: list[str]
