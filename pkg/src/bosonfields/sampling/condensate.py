"""
The condensate part of the Cox intensity.

A condensate of mean density κ adds √(κt)·e^{iθ}·u₀(x) to the Gaussian
amplitude field, where t ~ Exp(1), θ is a uniform phase, and u₀ is a
profile normalised so that its mean square over the box is 1.
"""

from dataclasses import dataclass
import math

import numpy as np

from bosonfields.errors import DomainError
from bosonfields.geometry import BoxGeometry


@dataclass(frozen=True)
class CondensateSpec:
    kappa: float = 0.0
    uniform_phase: bool = True

    def __post_init__(self) -> None:
        if not (self.kappa >= 0):
            raise DomainError(f"Condensate density must be ≥ 0, got {self.kappa!r}")

    def draw_amplitude(self, rng: np.random.Generator) -> complex:
        """
        √(κt)·e^{iθ} with t ~ Exp(1) and, if ``uniform_phase``, θ ~ U[0, 2π).
        """
        if self.kappa == 0:
            return 0j

        t = rng.exponential()
        theta = rng.uniform(0, 2 * math.pi) if self.uniform_phase else 0.0
        return complex(math.sqrt(self.kappa * t) * np.exp(1j * theta))


@dataclass(frozen=True)
class GroundStateProfile:
    """
    u₀ = √V · φ_ground for a Dirichlet box, i.e. ∏_j √2 cos(πx_j/L_j).
    """

    box: BoxGeometry

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        return np.prod(  # type: ignore[no-any-return]
            math.sqrt(2) * np.cos(np.pi * pts / np.array(self.box.lengths)), axis=1
        )

    @property
    def sup(self) -> float:
        return 2 * math.sqrt(2)


@dataclass(frozen=True)
class FlatProfile:
    """
    u₀ ≡ 1, the profile of a translation-invariant condensate.
    """

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.ones(len(np.atleast_2d(points)))

    @property
    def sup(self) -> float:
        return 1.0


CondensateProfile = GroundStateProfile | FlatProfile
