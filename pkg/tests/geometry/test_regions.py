import math

import numpy as np
import pytest

from bosonfields.errors import DomainError
from bosonfields.geometry import (
    BoxGeometry,
    TestFunction,
    Window,
    constant_function,
    cosine_bump,
    gaussian_bump,
)
from bosonfields.geometry.regions import tensor_gauss_legendre


@pytest.mark.parametrize(
    ["lower", "upper"],
    [
        ((0.0, 0.0), (1.0,)),
        ((), ()),
        ((0.0, 1.0), (1.0, 1.0)),
    ],
)
def test_invalid_windows_are_rejected(
    lower: tuple[float, ...], upper: tuple[float, ...]
) -> None:
    with pytest.raises(DomainError):
        Window(lower=lower, upper=upper)


def test_window_geometry() -> None:
    w = Window(lower=(-1.0, 0.0, 2.0), upper=(1.0, 3.0, 2.5))

    assert w.dimension == 3
    assert w.volume == pytest.approx(3.0)
    assert w.diameter == pytest.approx(math.sqrt(4 + 9 + 0.25))
    assert list(w.centre) == [0.0, 1.5, 2.25]
    assert w.to_json() == {"lower": [-1.0, 0.0, 2.0], "upper": [1.0, 3.0, 2.5]}


def test_window_from_box_fills_the_box() -> None:
    box = BoxGeometry(2.0, 4.0, 6.0)
    w = Window.from_box(box)

    assert w == Window.centred([2.0, 4.0, 6.0])
    assert w.is_inside(box)
    assert not Window.centred([2.0, 4.0, 6.1]).is_inside(box)


def test_window_contains() -> None:
    w = Window.centred([1.0, 1.0])
    mask = w.contains(np.array([[0.0, 0.0], [0.5, -0.5], [0.6, 0.0]]))

    assert list(mask) == [True, True, False]


def test_uniform_points_lie_in_the_window() -> None:
    w = Window(lower=(1.0, 2.0, 3.0), upper=(1.5, 4.0, 3.1))
    points = w.uniform(np.random.default_rng(seed=7), 1000)

    assert points.shape == (1000, 3)
    assert np.all(w.contains(points))


def test_gauss_legendre_integrates_polynomials_exactly() -> None:
    w = Window(lower=(0.0, -1.0), upper=(2.0, 1.0))
    nodes, weights = tensor_gauss_legendre(w, order=4)

    # ∫∫ x² (y + 1)³ dy dx = (8/3)·(16/4)
    integral = np.sum(weights * nodes[:, 0] ** 2 * (nodes[:, 1] + 1) ** 3)
    assert integral == pytest.approx(32 / 3, rel=1e-13)


def test_test_function_vanishes_outside_its_support() -> None:
    f = constant_function(2.0, Window.centred([1.0, 1.0, 1.0]))

    values = f(np.array([[0, 0, 0], [0.4, 0.4, 0.4], [0.6, 0, 0]]))
    assert list(values) == [2.0, 2.0, 0.0]


def test_negative_test_functions_are_rejected() -> None:
    with pytest.raises(DomainError):
        constant_function(-1.0, Window.centred([1.0]))

    f = TestFunction(func=lambda pts: -np.ones(len(pts)), support=Window.centred([1.0]))
    with pytest.raises(DomainError, match="negative"):
        f(np.array([[0.0]]))


def test_pairing_sums_over_points() -> None:
    f = constant_function(0.5, Window.centred([2.0, 2.0, 2.0]))
    points = np.array([[0, 0, 0], [0.5, 0.5, 0.5], [3, 0, 0]])

    assert f.pair(points) == 1.0
    assert f.pair(points, weight=4.0) == 4.0
    assert f.pair(np.empty((0, 3))) == 0.0


def test_test_function_integrals() -> None:
    support = Window(lower=(0.0, 0.0), upper=(2.0, 3.0))

    assert constant_function(1.5, support).integral() == pytest.approx(9.0)
    assert cosine_bump(2.0, support).integral() == pytest.approx(2.0 * 1.0 * 1.5)

    bump = gaussian_bump(1.0, [1.0, 1.5], 0.15, support)
    assert bump.integral(order=64) == pytest.approx(2 * math.pi * 0.15**2, rel=1e-6)


def test_gaussian_bump_needs_a_positive_width() -> None:
    with pytest.raises(DomainError):
        gaussian_bump(1.0, [0.0], 0.0, Window.centred([1.0]))
