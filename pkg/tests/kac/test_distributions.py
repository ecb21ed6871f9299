import math

import numpy as np
import pytest

from bosonfields.errors import DomainError
from bosonfields.geometry import ThermoParams
from bosonfields.kac import (
    AtomKac,
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
from bosonfields.seeding import substream
from bosonfields.thermo import rho_critical


T_GRID = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0]


def test_below_the_critical_density_is_an_atom(thermo: ThermoParams) -> None:
    dist = kac_kernel(thermo, 0.1)

    assert dist == AtomKac(rho=0.1)
    np.testing.assert_allclose(dist.laplace(T_GRID), np.exp(-0.1 * np.array(T_GRID)))


def test_at_the_critical_density_is_an_atom(thermo: ThermoParams) -> None:
    rho_c = rho_critical(thermo)

    assert kac_kernel(thermo, rho_c) == AtomKac(rho=rho_c)


def test_above_the_critical_density_is_a_shifted_exponential(thermo: ThermoParams) -> None:
    rho_c = rho_critical(thermo)
    dist = kac_kernel(thermo, 0.3)

    assert isinstance(dist, ShiftedExponentialKac)
    assert dist.shift == rho_c
    assert dist.scale == pytest.approx(0.3 - rho_c)
    assert dist.mean == pytest.approx(0.3)
    assert dist.total_mass() == pytest.approx(1.0, rel=1e-8)


def test_laplace_transform_factorises(thermo: ThermoParams) -> None:
    rho_c = rho_critical(thermo)
    t = np.array(T_GRID)

    laplace = kac_laplace(thermo, 0.3, t)

    np.testing.assert_allclose(laplace, factorised_laplace(thermo, 0.3, t), rtol=1e-14)
    np.testing.assert_allclose(
        laplace, np.exp(-t * rho_c) / (1 + t * (0.3 - rho_c)), rtol=1e-14
    )
    assert laplace[0] == 1.0


def test_convolution_matches_the_kac_distribution(thermo: ThermoParams) -> None:
    rho = 0.3
    grid = np.linspace(0, 5, 10_001)
    h = grid[1] - grid[0]
    scale = rho - rho_critical(thermo)

    # ρ_c falls between two nodes, so the atom is spread over both.
    assert (rho_critical(thermo) / h) % 1 > 0.1

    gap = kac_convolve_check(thermo, rho, grid)

    assert 0 < gap <= h**2 / (8 * scale**2) * 1.01


def test_convolution_gap_shrinks_with_the_spacing(thermo: ThermoParams) -> None:
    coarse = kac_convolve_check(thermo, 0.3, np.linspace(0, 5, 1_001))
    fine = kac_convolve_check(thermo, 0.3, np.linspace(0, 5, 10_001))

    assert fine < coarse / 20


def test_convolution_on_a_grid_that_starts_below_the_atom(thermo: ThermoParams) -> None:
    rho = rho_critical(thermo) * 1.01
    grid = convolution_grid(thermo, rho)

    assert grid[0] > 0
    assert grid[0] < rho_critical(thermo) < grid[-1]
    assert kac_convolve_check(thermo, rho, grid) <= 1e-6


def test_convolution_with_a_unit_condensate_scale(thermo: ThermoParams) -> None:
    rho = rho_critical(thermo) + 1

    assert kac_convolve_check(thermo, rho, np.linspace(0, 20, 10_001)) <= 1e-6


@pytest.mark.parametrize(
    "grid",
    [
        pytest.param([0.2, 0.3, 0.4], id="missing_the_critical_density"),
        pytest.param([0.0, 0.1, 0.3], id="not_equally_spaced"),
        pytest.param([0.3, 0.2, 0.1], id="decreasing"),
        pytest.param([0.0], id="single_point"),
    ],
)
def test_convolution_grid_is_checked(thermo: ThermoParams, grid: list[float]) -> None:
    with pytest.raises(DomainError):
        kac_convolve_check(thermo, 0.3, grid)


def test_convolution_needs_a_condensate(thermo: ThermoParams) -> None:
    with pytest.raises(DomainError):
        kac_convolve_check(thermo, 0.1, np.linspace(0, 1, 11))

    with pytest.raises(DomainError):
        condensate_factor(thermo, 0.1)


def test_samples_follow_the_shifted_exponential(thermo: ThermoParams) -> None:
    dist = kac_kernel(thermo, 0.3)
    assert isinstance(dist, ShiftedExponentialKac)

    samples = kac_sample(dist, substream(1234, "test/kac"), size=20_000)

    assert np.all(samples >= dist.shift)

    # The exponential has standard deviation equal to its scale.
    stderr = dist.scale / math.sqrt(len(samples))
    assert abs(float(np.mean(samples)) - dist.mean) <= 5 * stderr


def test_atom_samples_are_constant(thermo: ThermoParams) -> None:
    samples = kac_sample(kac_kernel(thermo, 0.1), substream(1234, "test/kac"), size=10)

    assert np.all(samples == 0.1)


@pytest.mark.parametrize("n", [2, 3, 5, 10])
@pytest.mark.parametrize("rho", [0.1, 0.3, 1.0])
def test_kac_distribution_is_infinitely_divisible(
    thermo: ThermoParams, rho: float, n: int
) -> None:
    report = infinite_divisibility_probe(thermo, rho, n, T_GRID)

    assert report.passed
    assert len(report.rows) == len(T_GRID)
    assert report.rows[0]["value"] == 1.0


def test_divisibility_probe_arguments_are_checked(thermo: ThermoParams) -> None:
    with pytest.raises(DomainError):
        infinite_divisibility_probe(thermo, 0.3, 1, T_GRID)

    with pytest.raises(DomainError):
        infinite_divisibility_probe(thermo, 0.3, 2, [-1.0, 0.0])


def test_empirical_laplace() -> None:
    mean, stderr = empirical_laplace(np.array([0.0, 0.0, 0.0]), 1.0)
    assert (mean, stderr) == (1.0, 0.0)

    mean, stderr = empirical_laplace(np.array([0.0, math.log(2)]), 1.0)
    assert mean == pytest.approx(0.75)
    assert stderr == pytest.approx(0.25)


def test_empirical_laplace_needs_two_samples_for_an_error() -> None:
    mean, stderr = empirical_laplace(np.array([]), 1.0)
    assert math.isnan(mean)
    assert math.isnan(stderr)

    mean, stderr = empirical_laplace(np.array([0.0]), 1.0)
    assert mean == 1.0
    assert math.isnan(stderr)


def test_invalid_arguments(thermo: ThermoParams) -> None:
    with pytest.raises(DomainError):
        kac_kernel(thermo, 0.0)

    with pytest.raises(DomainError):
        kac_laplace(thermo, 0.3, [-0.1])

    with pytest.raises(DomainError):
        ShiftedExponentialKac(shift=0.0, scale=0.0)


def test_cdfs() -> None:
    atom = AtomKac(rho=0.5)
    np.testing.assert_array_equal(atom.cdf([0.4, 0.5, 0.6]), [0.0, 1.0, 1.0])

    dist = ShiftedExponentialKac(shift=0.5, scale=2.0)
    np.testing.assert_allclose(dist.cdf([0.0, 0.5, 2.5]), [0.0, 0.0, 1 - math.exp(-1)])
    np.testing.assert_allclose(dist.density([0.0, 0.5]), [0.0, 0.5])
