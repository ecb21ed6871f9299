import pathlib

import pytest

from bosonfields.geometry import BoxGeometry, ThermoParams


@pytest.fixture
def thermo() -> ThermoParams:
    """
    β = ħ = m = 1, the units used by most of the worked examples.
    """
    return ThermoParams(beta=1.0)


@pytest.fixture
def unit_box() -> BoxGeometry:
    return BoxGeometry(1.0, 1.0, 1.0)


@pytest.fixture
def out_dir(tmp_path: pathlib.Path) -> pathlib.Path:
    """
    An output directory for a CLI run, which doesn't exist yet -- the
    CLI should create it.
    """
    return tmp_path / "out"
