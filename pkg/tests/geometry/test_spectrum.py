import math
import typing

import numpy as np
import pytest

from bosonfields.errors import DomainError, StabilityError
from bosonfields.geometry import (
    BoxGeometry,
    Mode,
    ThermoParams,
    Window,
    eigenfunction,
    eigenfunction_values,
    eigenvalue,
    occupation,
)
from bosonfields.geometry.regions import tensor_gauss_legendre


@pytest.mark.parametrize(
    ["lengths", "mode", "bc", "expected"],
    [
        ((1, 1, 1), Mode(1, 1, 1), "dirichlet", 3 * math.pi**2 / 2),
        ((1, 1, 1), Mode(0, 0, 0), "periodic", 0.0),
        ((2, 1, 1), Mode(2, 1, 1), "dirichlet", 3 * math.pi**2 / 2),
        ((1, 1, 1), Mode(1, 0, -1), "periodic", 4 * math.pi**2),
    ],
)
def test_eigenvalue(
    thermo: ThermoParams,
    lengths: tuple[float, float, float],
    mode: Mode,
    bc: typing.Any,
    expected: float,
) -> None:
    box = BoxGeometry(*lengths)
    assert eigenvalue(box, mode, bc, thermo) == pytest.approx(expected, abs=1e-12)


def test_dirichlet_modes_start_at_one(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    with pytest.raises(DomainError, match="k_j ≥ 1"):
        eigenvalue(unit_box, Mode(0, 1, 1), "dirichlet", thermo)


def test_ground_eigenfunction_at_the_centre(unit_box: BoxGeometry) -> None:
    value = eigenfunction(unit_box, Mode(1, 1, 1), "dirichlet", (0, 0, 0))
    assert value == pytest.approx(2 * math.sqrt(2))


def test_dirichlet_eigenfunction_vanishes_on_the_wall(unit_box: BoxGeometry) -> None:
    value = eigenfunction(unit_box, Mode(1, 1, 1), "dirichlet", (0.5, 0, 0))
    assert value == pytest.approx(0, abs=1e-12)


def test_periodic_eigenfunction_has_constant_modulus(unit_box: BoxGeometry) -> None:
    for x in [(0, 0, 0), (0.3, -0.1, 0.45)]:
        value = eigenfunction(unit_box, Mode(2, -1, 3), "periodic", x)
        assert isinstance(value, complex)
        assert abs(value) == pytest.approx(1.0)


def test_eigenfunction_outside_the_box_is_an_error(unit_box: BoxGeometry) -> None:
    with pytest.raises(DomainError, match="outside the box"):
        eigenfunction(unit_box, Mode(1, 1, 1), "dirichlet", (0.6, 0, 0))


def test_eigenfunction_is_normalised() -> None:
    box = BoxGeometry(2.0, 1.0, 1.0)
    nodes, weights = tensor_gauss_legendre(Window.from_box(box), order=20)

    values = eigenfunction_values(box, np.array([[2, 3, 1]]), "dirichlet", nodes)[:, 0]

    assert float(np.sum(weights * values**2)) == pytest.approx(1.0, abs=1e-8)


def test_random_eigenfunctions_are_normalised() -> None:
    rng = np.random.default_rng(seed=1234)
    box = BoxGeometry(1.5, 0.7, 2.0)
    modes = rng.integers(1, 6, size=(20, 3))

    nodes, weights = tensor_gauss_legendre(Window.from_box(box), order=24)
    values = eigenfunction_values(box, modes, "dirichlet", nodes)

    norms = np.sum(weights[:, None] * values**2, axis=0)
    assert np.allclose(norms, 1.0, atol=1e-8)


def test_occupation_with_log_two_gap_is_one(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    assert occupation(unit_box, Mode(1, 1, 1), thermo, math.log(2)) == pytest.approx(1.0)


def test_occupation_vanishes_for_a_large_gap(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    assert occupation(unit_box, Mode(1, 1, 1), thermo, 1000.0) == 0.0


def test_occupation_of_an_excited_mode(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    value = occupation(unit_box, Mode(2, 1, 1), thermo, 0.1)

    assert value == pytest.approx(1 / math.expm1(3 * math.pi**2 / 2 + 0.1))
    assert value == pytest.approx(3.37e-7, rel=1e-2)


@pytest.mark.parametrize("delta", [0.0, -0.5])
def test_ground_occupation_needs_a_positive_gap(
    unit_box: BoxGeometry, thermo: ThermoParams, delta: float
) -> None:
    with pytest.raises(StabilityError):
        occupation(unit_box, Mode(1, 1, 1), thermo, delta)


def test_excited_occupation_is_finite_without_a_gap(
    unit_box: BoxGeometry, thermo: ThermoParams
) -> None:
    assert math.isfinite(occupation(unit_box, Mode(1, 2, 1), thermo, 0.0))
