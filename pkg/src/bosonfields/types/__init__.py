from .configs import (
    AsymptoticCaseConfig,
    AsymptoticsConfig,
    BScheduleConfig,
    FormulaId,
    GapScheduleConfig,
    KacConfig,
    LaplaceFunctionConfig,
    PhaseConfig,
    ProfileConfig,
    SampleConfig,
    ScaledConfig,
    ThermoConfig,
    TruncationConfig,
    WindowConfig,
)
from .reports import (
    AsymptoticVerdict,
    BoxJson,
    ChiSquareVerdict,
    ConfigurationJson,
    KernelJson,
    LimitEstimateJson,
    Phase,
    PhaseReportJson,
    ScheduleDescription,
    WindowJson,
)


__all__ = [
    "AsymptoticCaseConfig",
    "AsymptoticVerdict",
    "AsymptoticsConfig",
    "BScheduleConfig",
    "BoxJson",
    "ChiSquareVerdict",
    "ConfigurationJson",
    "FormulaId",
    "GapScheduleConfig",
    "KacConfig",
    "KernelJson",
    "LaplaceFunctionConfig",
    "LimitEstimateJson",
    "Phase",
    "PhaseConfig",
    "PhaseReportJson",
    "ProfileConfig",
    "SampleConfig",
    "ScaledConfig",
    "ScheduleDescription",
    "ThermoConfig",
    "TruncationConfig",
    "WindowConfig",
    "WindowJson",
]
