"""
Rectangular windows, test functions on them, and tensor-product
Gauss-Legendre rules for integrating over them.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
import math
import typing

import numpy as np
from numpy.polynomial.legendre import leggauss

from bosonfields.errors import DomainError
from bosonfields.types import WindowJson
from .boxes import BoxGeometry


@dataclass(frozen=True)
class Window:
    """
    A closed rectangle ∏ [lower_j, upper_j] in d dimensions.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper) or not self.lower:
            raise DomainError(
                f"Window bounds must have the same non-zero length, got {self.lower!r} and {self.upper!r}"
            )
        if any(not (lo < hi) for lo, hi in zip(self.lower, self.upper)):
            raise DomainError(f"Window must have lower < upper, got {self.lower!r}, {self.upper!r}")

    @classmethod
    def from_box(cls, box: BoxGeometry) -> "Window":
        return cls(
            lower=tuple(-L / 2 for L in box.lengths),
            upper=tuple(L / 2 for L in box.lengths),
        )

    @classmethod
    def centred(cls, sides: typing.Sequence[float]) -> "Window":
        return cls(lower=tuple(-s / 2 for s in sides), upper=tuple(s / 2 for s in sides))

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def sides(self) -> np.ndarray:
        return np.array(self.upper) - np.array(self.lower)

    @property
    def volume(self) -> float:
        return float(np.prod(self.sides))

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.sides))

    @property
    def centre(self) -> np.ndarray:
        return (np.array(self.upper) + np.array(self.lower)) / 2  # type: ignore[no-any-return]

    def contains(self, points: np.ndarray, *, rtol: float = 1e-12) -> np.ndarray:
        """
        A boolean mask: which rows of an (n, d) array lie in the window.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        slack = rtol * np.maximum(np.abs(self.sides), 1.0)
        return np.all(  # type: ignore[no-any-return]
            (pts >= np.array(self.lower) - slack) & (pts <= np.array(self.upper) + slack),
            axis=1,
        )

    def is_inside(self, box: BoxGeometry) -> bool:
        return bool(
            self.dimension == 3
            and box.contains(np.array(self.lower))
            and box.contains(np.array(self.upper))
        )

    def uniform(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(n, self.dimension))

    def to_json(self) -> WindowJson:
        return {"lower": list(self.lower), "upper": list(self.upper)}


def tensor_gauss_legendre(window: Window, order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Nodes (shape (order^d, d)) and weights of the tensor-product
    Gauss-Legendre rule of the given order on the window.
    """
    x, w = leggauss(order)

    axes_nodes = []
    axes_weights = []
    for lo, hi in zip(window.lower, window.upper):
        half = (hi - lo) / 2
        axes_nodes.append(lo + half * (x + 1))
        axes_weights.append(half * w)

    grids = np.meshgrid(*axes_nodes, indexing="ij")
    weight_grids = np.meshgrid(*axes_weights, indexing="ij")

    nodes = np.column_stack([g.ravel() for g in grids])
    weights = np.prod(np.column_stack([g.ravel() for g in weight_grids]), axis=1)

    return nodes, weights


@dataclass(frozen=True)
class TestFunction:
    """
    A non-negative function, set to zero outside its support.

    ``func`` takes an (n, d) array of points and returns n values.
    """

    __test__: typing.ClassVar[bool] = False

    func: Callable[[np.ndarray], np.ndarray]
    support: Window
    name: str = field(default="f")

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.zeros(len(pts))

        inside = self.support.contains(pts)
        if np.any(inside):
            values[inside] = np.asarray(self.func(pts[inside]), dtype=float)

        if np.any(values < 0):
            raise DomainError(f"Test function {self.name!r} took a negative value")

        return values

    def pair(self, points: np.ndarray, weight: float = 1.0) -> float:
        """
        ⟨f, ξ⟩ = weight · Σ_i f(x_i) for a configuration of points.
        """
        if len(points) == 0:
            return 0.0
        return weight * float(np.sum(self(points)))

    def integral(self, order: int = 32) -> float:
        nodes, weights = tensor_gauss_legendre(self.support, order)
        return float(np.sum(weights * self(nodes)))


def constant_function(value: float, support: Window) -> TestFunction:
    if value < 0:
        raise DomainError(f"Test functions must be non-negative, got {value!r}")
    return TestFunction(
        func=lambda pts: np.full(len(pts), value),
        support=support,
        name=f"constant({value:g})",
    )


def gaussian_bump(
    height: float, centre: typing.Sequence[float], width: float, support: Window
) -> TestFunction:
    if height < 0 or width <= 0:
        raise DomainError(f"Need height ≥ 0 and width > 0, got {height!r}, {width!r}")
    c = np.asarray(centre, dtype=float)
    return TestFunction(
        func=lambda pts: height * np.exp(-np.sum((pts - c) ** 2, axis=1) / (2 * width**2)),
        support=support,
        name=f"bump({height:g}, {width:g})",
    )


def cosine_bump(height: float, support: Window) -> TestFunction:
    """
    height · ∏ cos²(π(x_j − c_j)/s_j), which vanishes smoothly at the
    edges of its support.
    """
    c = support.centre
    s = support.sides
    return TestFunction(
        func=lambda pts: height * np.prod(np.cos(math.pi * (pts - c) / s) ** 2, axis=1),
        support=support,
        name=f"cos2({height:g})",
    )
