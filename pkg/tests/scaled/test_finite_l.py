import numpy as np
import pytest

from bosonfields.errors import ConfigurationError
from bosonfields.geometry import BeamProfile, ThermoParams
from bosonfields.scaled import (
    ConvergenceReport,
    DensityTable,
    convergence_study,
    finite_L_scaled_density,
    line_grid,
)
from bosonfields.thermo import ConstantGap, rho_of_delta


@pytest.fixture
def cube() -> BeamProfile:
    """
    A BEAM with γ = 1 is a cube of side L.
    """
    return BeamProfile(gamma=1.0)


def test_line_grids() -> None:
    s = line_grid("S", 5)
    assert s.shape == (5, 2)
    assert s[:, 0] == pytest.approx([-0.5, -0.25, 0.0, 0.25, 0.5])
    assert np.all(s[:, 1] == 0)

    d = line_grid("D", 3, margin=0.1)
    assert d.shape == (3, 3)
    assert d[:, 2] == pytest.approx([-0.4, 0.0, 0.4])
    assert np.all(d[:, :2] == 0)

    r = line_grid("R", 3)
    assert r[:, 1] == pytest.approx([-0.5, 0.0, 0.5])

    i = line_grid("I", 4)
    assert i.shape == (4, 1)


def test_density_table() -> None:
    table = DensityTable(
        scale="R",
        L=10.0,
        grid=line_grid("R", 2),
        finite=np.array([1.1, 1.8]),
        limit=np.array([1.0, 2.0]),
    )

    assert table.gap == pytest.approx([0.1, -0.2])
    assert table.sup_gap == pytest.approx(0.2)
    assert table.relative_sup_gap == pytest.approx(0.1)

    rows = list(table.rows())
    assert rows[0] == {
        "L": 10.0,
        "coordinates": "0 -0.5 0",
        "finite": 1.1,
        "limit": 1.0,
        "gap": pytest.approx(0.1),
    }


def test_finite_density_approaches_the_bulk(thermo: ThermoParams, cube: BeamProfile) -> None:
    schedule = ConstantGap(0.5)

    table = finite_L_scaled_density(
        cube, thermo, schedule, 40.0, "R", line_grid("R", 5, margin=0.1)
    )

    assert table.limit == pytest.approx(np.full(5, rho_of_delta(thermo, 0.5)))

    # The gap is measured from the ground energy, which shifts the
    # finite density up by O(L⁻²).
    assert np.all(table.finite > 0.9 * table.limit)
    assert table.relative_sup_gap < 0.03


def test_finite_density_rejects_points_outside_the_region(
    thermo: ThermoParams, cube: BeamProfile
) -> None:
    grid = np.array([[0.0, 0.6, 0.0]])

    with pytest.raises(ConfigurationError, match="must lie in"):
        finite_L_scaled_density(cube, thermo, ConstantGap(0.5), 10.0, "R", grid)


def test_convergence_at_the_r_scale(thermo: ThermoParams, cube: BeamProfile) -> None:
    report = convergence_study(
        cube,
        thermo,
        ConstantGap(0.5),
        "R",
        [10.0, 20.0, 40.0],
        line_grid("R", 7, margin=0.1),
        threads=2,
    )

    assert report.monotone
    assert report.passed(0.05)

    summary = report.to_json()
    assert summary["L_sequence"] == [10.0, 20.0, 40.0]
    assert len(summary["sup_gaps"]) == 3
    assert summary["final_relative_gap"] == report.final_relative_gap


def test_convergence_at_the_i_scale(thermo: ThermoParams) -> None:
    report = convergence_study(
        BeamProfile(gamma=2.0),
        thermo,
        ConstantGap(0.5),
        "I",
        [20.0, 40.0, 80.0],
        line_grid("I", 5, margin=0.1),
    )

    assert report.monotone
    assert report.final_relative_gap < 0.01
    assert report.passed(0.05)


def test_threads_do_not_change_the_table(thermo: ThermoParams, cube: BeamProfile) -> None:
    grid = line_grid("R", 5, margin=0.1)

    one = finite_L_scaled_density(cube, thermo, ConstantGap(0.5), 10.0, "R", grid)
    four = finite_L_scaled_density(cube, thermo, ConstantGap(0.5), 10.0, "R", grid, threads=4)

    assert np.array_equal(one.finite, four.finite)


@pytest.mark.parametrize("L_sequence", [[10.0], [20.0, 10.0], [10.0, 10.0]])
def test_convergence_needs_an_increasing_sequence(
    thermo: ThermoParams, cube: BeamProfile, L_sequence: list[float]
) -> None:
    with pytest.raises(ConfigurationError, match="L_sequence"):
        convergence_study(cube, thermo, ConstantGap(0.5), "R", L_sequence, line_grid("R", 3))


def _table(L: float, gap: float) -> DensityTable:
    return DensityTable(
        scale="I",
        L=L,
        grid=line_grid("I", 1),
        finite=np.array([1.0 + gap]),
        limit=np.array([1.0]),
    )


def test_growing_gaps_are_not_monotone() -> None:
    report = ConvergenceReport(tables=[_table(10, 0.01), _table(20, 0.02)])

    assert not report.monotone
    assert not report.passed(0.05)


def test_gaps_at_round_off_count_as_converged() -> None:
    report = ConvergenceReport(tables=[_table(10, 0.01), _table(20, 0.0), _table(40, 1e-12)])

    assert report.monotone
    assert report.passed(0.05)


def test_large_final_gap_fails() -> None:
    report = ConvergenceReport(tables=[_table(10, 0.5), _table(20, 0.2)])

    assert report.monotone
    assert report.final_relative_gap == pytest.approx(0.2)
    assert not report.passed(0.05)
