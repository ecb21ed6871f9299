import math
import typing

import pytest

from bosonfields.errors import DomainError, FloatRangeError
from bosonfields.geometry import (
    BeamProfile,
    BoxGeometry,
    ExplicitProfile,
    SlabProfile,
    ThermoParams,
    box_from_profile,
    max_admissible_L,
)


def test_slab_box_grows_exponentially() -> None:
    box = box_from_profile(SlabProfile(alpha=0.5), L=2)

    assert box.lengths == pytest.approx((2 * math.e, 2 * math.e, 2))
    assert box.L1 == pytest.approx(5.43656, rel=1e-6)


def test_beam_box_grows_polynomially() -> None:
    box = box_from_profile(BeamProfile(gamma=2), L=3)
    assert box.lengths == pytest.approx((9, 3, 3))


@pytest.mark.parametrize("L", [0.001, 1.0, 1e9])
def test_explicit_profile_ignores_L(L: float) -> None:
    box = box_from_profile(ExplicitProfile(1, 1, 1), L=L)
    assert box.lengths == (1, 1, 1)


def test_volume_is_the_product_of_the_sides() -> None:
    box = BoxGeometry(2.0, 3.0, 5.0)
    assert box.volume == 30.0


def test_slab_overflow_names_the_largest_admissible_L() -> None:
    profile = SlabProfile(alpha=1.0)

    with pytest.raises(FloatRangeError, match="largest admissible L") as exc_info:
        box_from_profile(profile, L=1000)

    max_L = exc_info.value.max_L
    assert max_L == pytest.approx(max_admissible_L(profile))

    # Just below the limit, everything is still finite.
    box = box_from_profile(profile, L=max_L * 0.999)
    assert math.isfinite(box.volume)


def test_beam_with_huge_exponent_overflows() -> None:
    with pytest.raises(FloatRangeError):
        box_from_profile(BeamProfile(gamma=200), L=100)


@pytest.mark.parametrize(
    "make_profile",
    [
        lambda: SlabProfile(alpha=0),
        lambda: SlabProfile(alpha=-1),
        lambda: BeamProfile(gamma=0),
        lambda: BeamProfile(gamma=math.inf),
        lambda: ExplicitProfile(1, 0, 1),
        lambda: ExplicitProfile(1, 1, math.nan),
    ],
)
def test_invalid_profiles_are_rejected(make_profile: typing.Any) -> None:
    with pytest.raises(DomainError):
        make_profile()


@pytest.mark.parametrize("L", [0, -1, math.inf, math.nan])
def test_box_needs_a_positive_finite_L(L: float) -> None:
    with pytest.raises(DomainError):
        box_from_profile(SlabProfile(alpha=1), L=L)


@pytest.mark.parametrize("field", ["beta", "hbar", "mass"])
def test_thermo_params_must_be_positive(field: str) -> None:
    with pytest.raises(DomainError, match=field):
        ThermoParams(**{"beta": 1.0, field: 0.0})


def test_thermal_wavelength(thermo: ThermoParams) -> None:
    assert thermo.thermal_wavelength == pytest.approx(math.sqrt(2 * math.pi))
    assert ThermoParams(beta=2.0, hbar=1.0, mass=4.0).thermal_wavelength == pytest.approx(
        math.sqrt(math.pi)
    )


def test_box_contains(unit_box: BoxGeometry) -> None:
    assert unit_box.contains((0.5, -0.5, 0.0))
    assert not unit_box.contains((0.51, 0.0, 0.0))

    with pytest.raises(DomainError):
        unit_box.check_contains([[0, 0, 0], [0, 0, 0.6]])
