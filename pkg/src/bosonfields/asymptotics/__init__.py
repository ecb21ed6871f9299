from .cases import (
    AsymptoticCase,
    BSchedule,
    ConstantB,
    ExponentialB,
    PowerB,
    b_schedule_from_config,
    case_from_config,
    default_case,
    standard_cases,
)
from .formulas import a12_gap, envelope, leading, lhs, residual
from .harness import ResidualReport, ResidualRow, residual_report
from .cli import verify_asymptotics as asymptotics_cli


__all__ = [
    "AsymptoticCase",
    "BSchedule",
    "ConstantB",
    "ExponentialB",
    "PowerB",
    "ResidualReport",
    "ResidualRow",
    "a12_gap",
    "asymptotics_cli",
    "b_schedule_from_config",
    "case_from_config",
    "default_case",
    "envelope",
    "leading",
    "lhs",
    "residual",
    "residual_report",
    "standard_cases",
]
