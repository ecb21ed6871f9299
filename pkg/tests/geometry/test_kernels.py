import math

import mpmath
import numpy as np
import pytest

from bosonfields.errors import DomainError, EmptyKernelError, StabilityError
from bosonfields.geometry import (
    BoxGeometry,
    EnergyCutoff,
    ModeCount,
    PointAxis,
    ThermoParams,
    Window,
    build_kernel,
    diagonal_sum,
    kernel_diagonal,
    kernel_eval,
    kernel_matrix,
    limit_kernel,
)
from bosonfields.geometry.regions import tensor_gauss_legendre
from bosonfields.thermo import average_density


def test_a_low_cutoff_keeps_only_the_ground_mode(
    unit_box: BoxGeometry, thermo: ThermoParams
) -> None:
    kernel = build_kernel(unit_box, thermo, 0.3, EnergyCutoff(20.0))

    assert kernel.rank == 1
    assert kernel.mode_list()[0].as_tuple() == (1, 1, 1)
    assert kernel.occupations[0] == pytest.approx(1 / math.expm1(0.3))


def test_equal_energies_are_ordered_by_mode(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    kernel = build_kernel(unit_box, thermo, 0.1, ModeCount(3))

    assert [m.as_tuple() for m in kernel.mode_list()] == [(1, 1, 1), (2, 1, 1), (1, 2, 1)]


def test_occupations_are_nonincreasing(thermo: ThermoParams) -> None:
    box = BoxGeometry(3.0, 2.0, 1.0)
    kernel = build_kernel(box, thermo, 0.05, ModeCount(50))

    assert kernel.rank == 50
    assert np.all(np.diff(kernel.occupations) <= 0)
    assert np.all(kernel.occupations >= 0)


def test_cutoff_below_the_ground_state_is_an_error(
    unit_box: BoxGeometry, thermo: ThermoParams
) -> None:
    with pytest.raises(EmptyKernelError):
        build_kernel(unit_box, thermo, 0.1, EnergyCutoff(1.0))

    with pytest.raises(EmptyKernelError):
        build_kernel(unit_box, thermo, 0.1, ModeCount(0))


def test_kernel_needs_a_positive_gap(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    with pytest.raises(StabilityError):
        build_kernel(unit_box, thermo, 0.0, ModeCount(3))


def test_rank_one_kernel_at_the_centre(thermo: ThermoParams) -> None:
    box = BoxGeometry(2.0, 1.0, 1.0)
    kernel = build_kernel(box, thermo, 0.3, ModeCount(1))

    value = kernel_eval(kernel, (0, 0, 0), (0, 0, 0))
    assert value == pytest.approx(kernel.occupations[0] * 8 / box.volume)


def test_rank_one_periodic_kernel_is_uniform(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    kernel = build_kernel(unit_box, thermo, 0.3, ModeCount(1), bc="periodic")
    assert kernel.rank == 1

    lam = kernel.occupations[0]
    for x, y in [((0, 0, 0), (0, 0, 0)), ((0.1, 0.2, -0.3), (-0.4, 0.0, 0.25))]:
        value = kernel_eval(kernel, x, y)
        assert isinstance(value, complex)
        assert value == pytest.approx(lam / unit_box.volume)


def test_periodic_kernel_completes_the_last_shell(
    unit_box: BoxGeometry, thermo: ThermoParams
) -> None:
    kernel = build_kernel(unit_box, thermo, 0.3, ModeCount(2), bc="periodic")

    # The ground mode, then all six modes with |k| = 1.
    assert kernel.rank == 7


def test_periodic_kernel_is_hermitian(thermo: ThermoParams) -> None:
    box = BoxGeometry(2.0, 1.5, 1.0)
    kernel = build_kernel(box, thermo, 0.2, ModeCount(20), bc="periodic")

    x, y = (0.3, -0.2, 0.1), (-0.7, 0.5, -0.4)
    assert kernel_eval(kernel, x, y) == pytest.approx(np.conj(kernel_eval(kernel, y, x)))


def test_dirichlet_kernel_is_symmetric(thermo: ThermoParams) -> None:
    box = BoxGeometry(2.0, 1.5, 1.0)
    kernel = build_kernel(box, thermo, 0.2, ModeCount(30))

    rng = np.random.default_rng(seed=42)
    points = Window.from_box(box).uniform(rng, 10)

    matrix = kernel_matrix(kernel, points)
    assert np.allclose(matrix, matrix.T, rtol=1e-12, atol=1e-14 * np.max(np.abs(matrix)))


def test_kernel_matrix_is_positive_semidefinite(thermo: ThermoParams) -> None:
    box = BoxGeometry(2.0, 1.5, 1.0)
    kernel = build_kernel(box, thermo, 0.2, ModeCount(30))

    rng = np.random.default_rng(seed=43)
    points = Window.from_box(box).uniform(rng, 25)

    matrix = kernel_matrix(kernel, points)
    assert np.min(np.linalg.eigvalsh(matrix)) >= -1e-10 * np.trace(matrix)


def test_kernel_eval_checks_positions(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    kernel = build_kernel(unit_box, thermo, 0.2, ModeCount(3))

    with pytest.raises(DomainError):
        kernel_eval(kernel, (0, 0, 0), (1, 0, 0))


def test_trace_is_the_integral_of_the_diagonal(thermo: ThermoParams) -> None:
    box = BoxGeometry(1.0, 1.2, 0.8)
    kernel = build_kernel(box, thermo, 0.2, ModeCount(10))

    nodes, weights = tensor_gauss_legendre(Window.from_box(box), order=16)
    integral = float(np.sum(weights * kernel_diagonal(kernel, nodes)))

    assert integral == pytest.approx(float(np.sum(kernel.occupations)), rel=1e-10)


def test_tail_bound_covers_the_dropped_modes(thermo: ThermoParams) -> None:
    box = BoxGeometry(10.0, 10.0, 10.0)
    kernel = build_kernel(box, thermo, 0.1, EnergyCutoff(5.0))

    kept = float(np.sum(kernel.occupations)) / box.volume
    exact = average_density(box, thermo, 0.1)

    assert kept <= exact <= kept + kernel.tail_bound / box.volume


def test_kernel_serialises_to_json(unit_box: BoxGeometry, thermo: ThermoParams) -> None:
    kernel = build_kernel(unit_box, thermo, 0.1, ModeCount(3))
    data = kernel.to_json()

    assert data["modes"] == [[1, 1, 1], [2, 1, 1], [1, 2, 1]]
    assert data["box"] == {"L1": 1.0, "L2": 1.0, "L3": 1.0}
    assert data["delta"] == 0.1
    assert data["tail_bound"] > 0


def test_limit_kernel_at_zero_gap_is_the_critical_density(thermo: ThermoParams) -> None:
    expected = float(mpmath.zeta(1.5) / (2 * mpmath.pi) ** 1.5)

    assert limit_kernel(thermo, 0.0, (0, 0, 0), (0, 0, 0)) == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(0.165869, rel=1e-5)


def test_limit_kernel_matches_the_polylog(thermo: ThermoParams) -> None:
    delta = 0.3
    expected = float(mpmath.polylog(1.5, mpmath.exp(-delta)) / (2 * mpmath.pi) ** 1.5)

    assert limit_kernel(thermo, delta, (0.1, 0, 0), (0.1, 0, 0)) == pytest.approx(
        expected, rel=1e-9
    )


def test_limit_kernel_of_an_empty_gas(thermo: ThermoParams) -> None:
    assert limit_kernel(thermo, math.inf, (0, 0, 0), (0, 0, 0)) == 0.0
    assert limit_kernel(thermo, 800.0, (0, 0, 0), (0, 0, 0)) < 1e-300


def test_limit_kernel_decays_with_distance(thermo: ThermoParams) -> None:
    values = [limit_kernel(thermo, 0.5, (0, 0, 0), (r, 0, 0)) for r in np.linspace(0, 5, 21)]

    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-3


def test_critical_limit_kernel_has_a_long_range_tail(thermo: ThermoParams) -> None:
    # At Δ∞ = 0 the kernel decays like 1/(λ²r), not exponentially.
    r = 5.0
    value = limit_kernel(thermo, 0.0, (0, 0, 0), (r, 0, 0))

    assert value == pytest.approx(1 / (thermo.thermal_wavelength**2 * r), rel=1e-6)


def test_limit_kernel_needs_a_nonnegative_gap(thermo: ThermoParams) -> None:
    with pytest.raises(StabilityError):
        limit_kernel(thermo, -0.1, (0, 0, 0), (0, 0, 0))


def test_box_diagonal_approaches_the_limit_kernel(thermo: ThermoParams) -> None:
    L = 40.0
    finite = diagonal_sum((PointAxis(L, 0.0),) * 3, thermo, 0.5)
    limit = limit_kernel(thermo, 0.5, (0, 0, 0), (0, 0, 0))

    assert abs(finite - limit) <= 0.02 * limit
