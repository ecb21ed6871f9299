"""
The four scaling transforms, which turn a point configuration in a
large box into a finite measure on a fixed region.

    scale   box               weight          coordinates          region
    S       SLAB              L⁻³e^{−2αL}     (x₁, x₂)/(Le^{αL})   [−½, ½]²
    D       SLAB              L⁻³             x/L                  ℝ² × [−½, ½]
    R       BEAM              L⁻³             x/L                  ℝ × [−½, ½]²
    I       BEAM with γ = 2   L⁻⁴             x₁/L²                [−½, ½]

A test function f on the region pulls back to f_L(x) = weight·f(Tx) on
the box, and ⟨f_L, ξ⟩ = ⟨f, Tξ⟩.

"""

from dataclasses import dataclass
import math
import typing

import numpy as np

from bosonfields.errors import ConfigurationError
from bosonfields.geometry import (
    AnisotropyProfile,
    BeamProfile,
    BoxGeometry,
    SlabProfile,
    TestFunction,
    Window,
    box_from_profile,
)
from bosonfields.sampling import PointConfiguration


Scale = typing.Literal["S", "D", "R", "I"]


@dataclass(frozen=True)
class ScalingTransform:
    scale: Scale
    L: float
    profile: AnisotropyProfile

    def __post_init__(self) -> None:
        if self.scale in ("S", "D") and not isinstance(self.profile, SlabProfile):
            raise ConfigurationError(f"The {self.scale} scale needs a SLAB profile")
        if self.scale in ("R", "I") and not isinstance(self.profile, BeamProfile):
            raise ConfigurationError(f"The {self.scale} scale needs a BEAM profile")
        if self.scale == "I" and isinstance(self.profile, BeamProfile) and self.profile.gamma != 2:
            raise ConfigurationError(
                f"The I scale needs a BEAM with γ = 2, got γ={self.profile.gamma!r}"
            )

    @property
    def box(self) -> BoxGeometry:
        return box_from_profile(self.profile, self.L)

    @property
    def log_weight(self) -> float:
        if self.scale == "S":
            assert isinstance(self.profile, SlabProfile)
            return -3 * math.log(self.L) - 2 * self.profile.alpha * self.L
        elif self.scale == "I":
            return -4 * math.log(self.L)
        else:
            return -3 * math.log(self.L)

    @property
    def weight(self) -> float:
        return math.exp(self.log_weight)

    @property
    def dimension(self) -> int:
        return {"S": 2, "D": 3, "R": 3, "I": 1}[self.scale]

    def map_points(self, points: np.ndarray) -> np.ndarray:
        """
        The image of an (n, 3) array of box coordinates in the region.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))

        if self.scale == "S":
            assert isinstance(self.profile, SlabProfile)
            return pts[:, :2] / self.box.L1  # type: ignore[no-any-return]
        elif self.scale == "I":
            return pts[:, :1] / self.L**2  # type: ignore[no-any-return]
        else:
            return pts / self.L  # type: ignore[no-any-return]

    def _scale_factors(self) -> np.ndarray:
        box = self.box
        if self.scale == "S":
            return np.array([box.L1, box.L2])
        elif self.scale == "I":
            return np.array([self.L**2])
        else:
            return np.full(3, self.L)

    @property
    def region(self) -> Window:
        """
        The image of the whole box.
        """
        return self.image_of(Window.from_box(self.box))

    def image_of(self, window: Window) -> Window:
        factors = self._scale_factors()
        d = self.dimension
        return Window(
            lower=tuple(float(x) for x in np.array(window.lower[:d]) / factors),
            upper=tuple(float(x) for x in np.array(window.upper[:d]) / factors),
        )

    def pull_back(self, f: TestFunction) -> TestFunction:
        """
        The test function f_L(x) = weight·f(Tx) on the box.
        """
        if f.support.dimension != self.dimension:
            raise ConfigurationError(
                f"A test function for the {self.scale} scale must be {self.dimension}-dimensional"
            )

        box_window = Window.from_box(self.box)
        factors = self._scale_factors()

        lower = list(box_window.lower)
        upper = list(box_window.upper)
        for j in range(self.dimension):
            lower[j] = max(lower[j], f.support.lower[j] * factors[j])
            upper[j] = min(upper[j], f.support.upper[j] * factors[j])

        weight = self.weight

        return TestFunction(
            func=lambda pts: weight * f(self.map_points(pts)),
            support=Window(lower=tuple(lower), upper=tuple(upper)),
            name=f"{f.name}_L",
        )


@dataclass(frozen=True)
class ScaledMeasure:
    """
    A finite measure Σ weight·δ_{position} on a region.
    """

    positions: np.ndarray
    weight: float
    region: Window

    @property
    def mass(self) -> float:
        return self.weight * len(self.positions)

    def pair(self, f: TestFunction) -> float:
        """
        ⟨f, η⟩ = weight · Σ f(position)
        """
        return f.pair(self.positions, weight=self.weight)


def apply_scaling(config: PointConfiguration, transform: ScalingTransform) -> ScaledMeasure:
    """
    Rescale a configuration sampled in the transform's box.
    """
    if config.window.dimension != 3 or not config.window.is_inside(transform.box):
        raise ConfigurationError(
            f"Configuration window {config.window.to_json()} is not inside the "
            f"{transform.scale}-scale box {transform.box.lengths}"
        )

    return ScaledMeasure(
        positions=transform.map_points(config.points).reshape(-1, transform.dimension),
        weight=transform.weight,
        region=transform.region,
    )
