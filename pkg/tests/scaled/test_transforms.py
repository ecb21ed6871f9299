import math
import typing

import numpy as np
import pytest

from bosonfields.errors import ConfigurationError
from bosonfields.geometry import (
    BeamProfile,
    SlabProfile,
    Window,
    constant_function,
    cosine_bump,
)
from bosonfields.sampling import PointConfiguration
from bosonfields.scaled import ScalingTransform, apply_scaling


def test_s_scale() -> None:
    transform = ScalingTransform(scale="S", L=2.0, profile=SlabProfile(alpha=1.0))
    wide = 2.0 * math.e**2

    assert transform.box.lengths == pytest.approx((wide, wide, 2.0))
    assert transform.dimension == 2
    assert transform.weight == pytest.approx(math.exp(-4.0) / 8)

    image = transform.map_points(np.array([[wide / 4, -wide / 4, 0.3]]))
    assert image == pytest.approx(np.array([[0.25, -0.25]]))

    assert transform.region.lower == pytest.approx((-0.5, -0.5))
    assert transform.region.upper == pytest.approx((0.5, 0.5))


def test_d_scale() -> None:
    transform = ScalingTransform(scale="D", L=2.0, profile=SlabProfile(alpha=1.0))

    assert transform.dimension == 3
    assert transform.weight == pytest.approx(1 / 8)
    assert transform.map_points(np.array([[1.0, 0.5, -1.0]])) == pytest.approx(
        np.array([[0.5, 0.25, -0.5]])
    )

    # ℝ² × [−½, ½], as seen from a finite box
    assert transform.region.upper == pytest.approx((math.e**2 / 2, math.e**2 / 2, 0.5))


def test_r_scale() -> None:
    transform = ScalingTransform(scale="R", L=2.0, profile=BeamProfile(gamma=3.0))

    assert transform.box.lengths == pytest.approx((8.0, 2.0, 2.0))
    assert transform.weight == pytest.approx(1 / 8)
    assert transform.region.lower == pytest.approx((-2.0, -0.5, -0.5))
    assert transform.region.upper == pytest.approx((2.0, 0.5, 0.5))


def test_i_scale() -> None:
    transform = ScalingTransform(scale="I", L=3.0, profile=BeamProfile(gamma=2.0))

    assert transform.dimension == 1
    assert transform.weight == pytest.approx(1 / 81)
    assert transform.map_points(np.array([[4.5, 1.0, -1.0]])) == pytest.approx(np.array([[0.5]]))
    assert transform.region.lower == pytest.approx((-0.5,))
    assert transform.region.upper == pytest.approx((0.5,))


@pytest.mark.parametrize(
    "scale, profile",
    [
        ("S", BeamProfile(gamma=2.0)),
        ("D", BeamProfile(gamma=2.0)),
        ("R", SlabProfile(alpha=1.0)),
        ("I", SlabProfile(alpha=1.0)),
        ("I", BeamProfile(gamma=3.0)),
    ],
)
def test_rejects_the_wrong_profile(
    scale: typing.Literal["S", "D", "R", "I"], profile: SlabProfile | BeamProfile
) -> None:
    with pytest.raises(ConfigurationError):
        ScalingTransform(scale=scale, L=2.0, profile=profile)


def test_pull_back_matches_the_scaled_measure() -> None:
    """
    ⟨f_L, ξ⟩ and ⟨f, Tξ⟩ are the same number.
    """
    transform = ScalingTransform(scale="S", L=1.5, profile=SlabProfile(alpha=0.5))
    rng = np.random.default_rng(seed=1)

    window = Window.from_box(transform.box)
    config = PointConfiguration(points=window.uniform(rng, 50), window=window)

    f = cosine_bump(2.0, Window.centred([0.5, 0.5]))
    f_L = transform.pull_back(f)

    assert f_L.pair(config.points) == pytest.approx(apply_scaling(config, transform).pair(f))


def test_pull_back_clips_to_the_box() -> None:
    transform = ScalingTransform(scale="I", L=2.0, profile=BeamProfile(gamma=2.0))

    f = constant_function(1.0, Window(lower=(0.0,), upper=(0.25,)))
    f_L = transform.pull_back(f)

    assert f_L.support.lower == pytest.approx((0.0, -1.0, -1.0))
    assert f_L.support.upper == pytest.approx((1.0, 1.0, 1.0))
    assert f_L(np.array([[0.5, 0.0, 0.0]])) == pytest.approx([1 / 16])
    assert f_L(np.array([[-0.5, 0.0, 0.0]])) == pytest.approx([0.0])


def test_pull_back_needs_the_right_dimension() -> None:
    transform = ScalingTransform(scale="D", L=2.0, profile=SlabProfile(alpha=1.0))

    with pytest.raises(ConfigurationError, match="3-dimensional"):
        transform.pull_back(constant_function(1.0, Window.centred([1.0])))


def test_scaled_measure_mass() -> None:
    transform = ScalingTransform(scale="R", L=2.0, profile=BeamProfile(gamma=1.0))
    window = Window.centred([1.0, 1.0, 1.0])
    config = PointConfiguration(points=np.zeros((4, 3)), window=window)

    measure = apply_scaling(config, transform)

    assert measure.positions.shape == (4, 3)
    assert measure.mass == pytest.approx(4 / 8)
    assert measure.region == transform.region


def test_apply_scaling_needs_a_window_in_the_box() -> None:
    transform = ScalingTransform(scale="I", L=2.0, profile=BeamProfile(gamma=2.0))
    window = Window.centred([1.0, 3.0, 1.0])
    config = PointConfiguration(points=np.zeros((1, 3)), window=window)

    with pytest.raises(ConfigurationError, match="not inside"):
        apply_scaling(config, transform)
