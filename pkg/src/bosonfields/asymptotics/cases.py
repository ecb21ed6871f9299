"""
Cases for the asymptotics harness: a formula, a constant A > 0, a
schedule L ↦ B(L) > 0, and a grid of L values.
"""

import abc
from dataclasses import dataclass, field
import math
import sys

import numpy as np

from bosonfields.errors import ConfigurationError
from bosonfields.types import AsymptoticCaseConfig, BScheduleConfig, FormulaId


class BSchedule(abc.ABC):
    @abc.abstractmethod
    def __call__(self, L: float) -> float:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def max_L(self) -> float:
        """
        The largest L at which B(L) is still a positive float.
        """
        raise NotImplementedError

    @abc.abstractmethod
    def describe(self) -> str:
        raise NotImplementedError

    @abc.abstractmethod
    def to_config(self) -> BScheduleConfig:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantB(BSchedule):
    value: float

    def __call__(self, L: float) -> float:
        return self.value

    @property
    def max_L(self) -> float:
        return math.inf

    def describe(self) -> str:
        return f"B = {self.value:g}"

    def to_config(self) -> BScheduleConfig:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class PowerB(BSchedule):
    """
    B(L) = scale · L^{−p}
    """

    p: float
    scale: float = 1.0

    def __call__(self, L: float) -> float:
        return self.scale * L ** (-self.p)

    @property
    def max_L(self) -> float:
        if self.p <= 0:
            return math.inf
        return float((self.scale / sys.float_info.min) ** (1 / self.p))

    def describe(self) -> str:
        if self.scale == 1:
            return f"B = L^-{self.p:g}"
        return f"B = {self.scale:g}·L^-{self.p:g}"

    def to_config(self) -> BScheduleConfig:
        return {"kind": "power", "p": self.p, "scale": self.scale}


@dataclass(frozen=True)
class ExponentialB(BSchedule):
    """
    B(L) = scale · e^{−c·L}
    """

    c: float
    scale: float = 1.0

    def __call__(self, L: float) -> float:
        return self.scale * math.exp(-self.c * L)

    @property
    def max_L(self) -> float:
        if self.c <= 0:
            return math.inf
        return math.log(self.scale / sys.float_info.min) / self.c

    def describe(self) -> str:
        if self.scale == 1:
            return f"B = exp(-{self.c:g}·L)"
        return f"B = {self.scale:g}·exp(-{self.c:g}·L)"

    def to_config(self) -> BScheduleConfig:
        return {"kind": "exponential", "c": self.c, "scale": self.scale}


def b_schedule_from_config(config: BScheduleConfig) -> BSchedule:
    if config["kind"] == "constant":
        if not (config["value"] > 0):
            raise ConfigurationError(f"B must be positive, got {config['value']!r}")
        return ConstantB(config["value"])
    elif config["kind"] == "power":
        return PowerB(p=config["p"], scale=config.get("scale", 1.0))
    else:
        return ExponentialB(c=config["c"], scale=config.get("scale", 1.0))


DEFAULT_L_GRID = (50.0, 100.0, 200.0, 400.0)

# A7 sums over an L² × L rectangle, so it gets a smaller grid.
A7_L_GRID = (10.0, 20.0, 40.0, 80.0)

# For A12 the grid is of X values, not L.
A12_X_GRID = tuple(float(x) for x in np.logspace(-6, 3, 91))


def default_L_grid(formula: FormulaId) -> tuple[float, ...]:
    if formula == "A7":
        return A7_L_GRID
    elif formula == "A12":
        return A12_X_GRID
    else:
        return DEFAULT_L_GRID


DEFAULT_SCHEDULES: dict[FormulaId, BSchedule] = {
    "A1": PowerB(2),
    "A2": PowerB(2),
    "A3": PowerB(2),
    "A7": PowerB(3),
    "A8": PowerB(6),
    "A9": PowerB(6),
    "A10": PowerB(6),
    "A11": PowerB(4),
    "A12": ConstantB(1.0),
}


@dataclass(frozen=True)
class AsymptoticCase:
    formula: FormulaId
    A: float = 1.0
    schedule: BSchedule = field(default_factory=lambda: ConstantB(1.0))
    L_grid: tuple[float, ...] = DEFAULT_L_GRID

    def __post_init__(self) -> None:
        if not (self.A > 0):
            raise ConfigurationError(f"A must be positive, got {self.A!r}")
        if len(self.L_grid) < 4:
            raise ConfigurationError(
                f"A residual fit needs at least 4 grid points, got {len(self.L_grid)}"
            )
        if any(b <= a for a, b in zip(self.L_grid, self.L_grid[1:])) or self.L_grid[0] <= 0:
            raise ConfigurationError(f"The grid must be positive and increasing, got {self.L_grid!r}")

    def B(self, L: float) -> float:
        return self.schedule(L)

    def describe(self) -> str:
        if self.formula == "A12":
            return "X sweep"
        return f"A = {self.A:g}, {self.schedule.describe()}"

    def to_config(self) -> AsymptoticCaseConfig:
        return {
            "formula": self.formula,
            "A": self.A,
            "schedule": self.schedule.to_config(),
            "L_grid": list(self.L_grid),
        }


def default_case(formula: FormulaId, A: float = 1.0) -> AsymptoticCase:
    schedule = DEFAULT_SCHEDULES[formula]

    # With B = A/L² the argument of φ in A3 is fixed at 1.
    if formula == "A3":
        schedule = PowerB(2, scale=A)

    return AsymptoticCase(
        formula=formula, A=A, schedule=schedule, L_grid=default_L_grid(formula)
    )


def case_from_config(config: AsymptoticCaseConfig) -> AsymptoticCase:
    formula = config["formula"]
    A = config.get("A", 1.0)
    default = default_case(formula, A)

    return AsymptoticCase(
        formula=formula,
        A=A,
        schedule=(
            b_schedule_from_config(config["schedule"])
            if "schedule" in config
            else default.schedule
        ),
        L_grid=tuple(config.get("L_grid", default.L_grid)),
    )


def standard_cases() -> list[AsymptoticCase]:
    """
    Every formula, under schedules that exercise both sides of each
    minimum L² ∧ B⁻¹, L ∧ B^{−1/2}, … that appears in it.
    """
    constant = ConstantB(1.0)

    families: dict[FormulaId, list[BSchedule]] = {
        # log(L² ∧ B⁻¹): B⁻¹ wins for constant B, L² for B = L⁻⁴
        "A1": [constant, PowerB(2), PowerB(4)],
        "A2": [constant, PowerB(2), PowerB(4)],
        "A3": [constant, PowerB(2), PowerB(4)],
        # L₁/L₂ ∧ 1/(L₂√B): the second term wins for B = L⁻¹ and B = L⁻³,
        # the first for B = L⁻⁶ and B = e^{−L}.  log(L₂ ∧ B^{−1/2}): B^{−1/2}
        # wins for B = L⁻¹, L₂ for the rest
        "A7": [PowerB(1), PowerB(3), PowerB(6), ExponentialB(1)],
        # the L⁻⁴B⁻¹ term only matters once B ≪ L⁻⁴
        "A8": [constant, PowerB(6)],
        "A9": [constant, PowerB(6)],
        "A10": [constant, PowerB(6)],
        # L ∧ B^{−1/2}: B^{−1/2} wins for constant B, L for B = L⁻⁴
        "A11": [constant, PowerB(4), ExponentialB(1)],
    }

    cases = [
        AsymptoticCase(formula=formula, schedule=s, L_grid=default_L_grid(formula))
        for formula, schedules in families.items()
        for s in schedules
    ]
    cases.append(default_case("A12"))

    return cases
