import math
import sys
import typing

import pytest

from bosonfields.asymptotics import (
    AsymptoticCase,
    ConstantB,
    ExponentialB,
    PowerB,
    b_schedule_from_config,
    case_from_config,
    default_case,
    standard_cases,
)
from bosonfields.errors import ConfigurationError


def test_schedules() -> None:
    assert ConstantB(0.5)(100.0) == 0.5
    assert PowerB(2, scale=3.0)(10.0) == pytest.approx(0.03)
    assert ExponentialB(0.5)(4.0) == pytest.approx(math.exp(-2.0))


def test_largest_usable_L() -> None:
    assert ConstantB(1.0).max_L == math.inf
    assert PowerB(0).max_L == math.inf
    assert PowerB(2).max_L == pytest.approx(sys.float_info.min ** -0.5)
    assert ExponentialB(1.0).max_L == pytest.approx(-math.log(sys.float_info.min))

    # Just below max_L, B is still a positive float.
    schedule = ExponentialB(2.0)
    assert schedule(0.999 * schedule.max_L) > 0


@pytest.mark.parametrize(
    "schedule, description",
    [
        (ConstantB(1.0), "B = 1"),
        (PowerB(2), "B = L^-2"),
        (PowerB(2, scale=3.0), "B = 3·L^-2"),
        (ExponentialB(1.0), "B = exp(-1·L)"),
        (ExponentialB(1.0, scale=0.5), "B = 0.5·exp(-1·L)"),
    ],
)
def test_describe(schedule: ConstantB | PowerB | ExponentialB, description: str) -> None:
    assert schedule.describe() == description


def test_schedule_from_config() -> None:
    assert b_schedule_from_config({"kind": "constant", "value": 2.0}) == ConstantB(2.0)
    assert b_schedule_from_config({"kind": "power", "p": 4}) == PowerB(4)
    assert b_schedule_from_config({"kind": "exponential", "c": 1.0, "scale": 2.0}) == (
        ExponentialB(1.0, scale=2.0)
    )


@pytest.mark.parametrize("value", [0.0, -1.0])
def test_constant_schedule_must_be_positive(value: float) -> None:
    with pytest.raises(ConfigurationError, match="B must be positive"):
        b_schedule_from_config({"kind": "constant", "value": value})


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"A": 0.0}, "A must be positive"),
        ({"A": -1.0}, "A must be positive"),
        ({"L_grid": (10.0, 20.0, 40.0)}, "at least 4 grid points"),
        ({"L_grid": (10.0, 20.0, 20.0, 40.0)}, "positive and increasing"),
        ({"L_grid": (40.0, 20.0, 10.0, 5.0)}, "positive and increasing"),
        ({"L_grid": (0.0, 1.0, 2.0, 3.0)}, "positive and increasing"),
    ],
)
def test_case_validation(kwargs: dict[str, typing.Any], message: str) -> None:
    with pytest.raises(ConfigurationError, match=message):
        AsymptoticCase(formula="A1", **kwargs)


def test_default_cases() -> None:
    a3 = default_case("A3", A=2.0)
    assert a3.schedule == PowerB(2, scale=2.0)

    a7 = default_case("A7")
    assert a7.L_grid == (10.0, 20.0, 40.0, 80.0)

    a12 = default_case("A12")
    assert a12.L_grid[0] == pytest.approx(1e-6)
    assert a12.L_grid[-1] == pytest.approx(1e3)
    assert a12.describe() == "X sweep"


def test_case_from_config_fills_in_defaults() -> None:
    case = case_from_config({"formula": "A11"})

    assert case.A == 1.0
    assert case.schedule == PowerB(4)
    assert case.L_grid == (50.0, 100.0, 200.0, 400.0)
    assert case.describe() == "A = 1, B = L^-4"


def test_case_from_config() -> None:
    case = case_from_config(
        {
            "formula": "A1",
            "A": 0.5,
            "schedule": {"kind": "exponential", "c": 0.1},
            "L_grid": [10, 20, 30, 40, 50],
        }
    )

    assert case.schedule == ExponentialB(0.1)
    assert case.L_grid == (10, 20, 30, 40, 50)
    assert case.B(10) == pytest.approx(math.exp(-1.0))
    assert case_from_config(case.to_config()) == case


def test_standard_cases() -> None:
    cases = standard_cases()
    formulas = [c.formula for c in cases]

    assert len(cases) == 23
    assert formulas[-1] == "A12"
    assert set(formulas) == {"A1", "A2", "A3", "A7", "A8", "A9", "A10", "A11", "A12"}
    assert all(c.L_grid == (10.0, 20.0, 40.0, 80.0) for c in cases if c.formula == "A7")
