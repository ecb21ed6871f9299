"""
Sampling boson point processes as Cox processes.

A boson process with kernel K = Σ λ_k φ_k ⊗ conj(φ_k) is a Poisson
process whose random intensity is |G(x)|², where

    G(x) = Σ_k √λ_k ζ_k φ_k(x)  (+ √(κt)·e^{iθ}·u₀(x) with a condensate)

and the ζ_k are independent standard complex Gaussians.

To sample the Poisson process, we bound |G| on the window, draw a
homogeneous Poisson process at that bound, and keep each point with
probability |G(x)|² / bound.

"""

from dataclasses import dataclass
import logging

import numpy as np

from bosonfields.errors import DomainError, ThinningBoundError
from bosonfields.geometry import TruncatedKernel, Window, eigenfunction_values
from bosonfields.geometry.spectrum import eigenfunction_sup
from bosonfields.types import ConfigurationJson
from .condensate import CondensateProfile, CondensateSpec
from .fredholm import default_profile


logger = logging.getLogger(__name__)


# We refuse to draw more candidate points than this for one configuration.
MAX_EXPECTED_CANDIDATES = 1e7


@dataclass(frozen=True)
class PointConfiguration:
    points: np.ndarray
    window: Window

    def __post_init__(self) -> None:
        if self.points.ndim != 2 or self.points.shape[1] != self.window.dimension:
            raise DomainError(
                f"Points must have shape (n, {self.window.dimension}), got {self.points.shape}"
            )
        if not np.all(self.window.contains(self.points)):
            raise DomainError("Every point of a configuration must lie in its window")

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self, index: int) -> ConfigurationJson:
        return {
            "index": index,
            "window": self.window.to_json(),
            "points": [[float(x) for x in p] for p in self.points],
        }


@dataclass(frozen=True)
class Intensity:
    """
    x ↦ |G(x)|² for one draw of the amplitudes.
    """

    kernel: TruncatedKernel
    amplitudes: np.ndarray
    condensate_amplitude: complex
    profile: CondensateProfile

    def amplitude(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        field = eigenfunction_values(self.kernel.box, self.kernel.modes, self.kernel.bc, pts) @ self.amplitudes
        if self.condensate_amplitude != 0:
            field = field + self.condensate_amplitude * self.profile(pts)
        return field  # type: ignore[no-any-return]

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.abs(self.amplitude(points)) ** 2  # type: ignore[no-any-return]

    def bound(self) -> float:
        """
        An upper bound on the intensity anywhere in the box, from the
        Cauchy-Schwarz inequality on the mode expansion.
        """
        sup_phi = eigenfunction_sup(self.kernel.box, self.kernel.bc)
        amplitude_bound = float(np.sum(np.abs(self.amplitudes))) * sup_phi
        amplitude_bound += abs(self.condensate_amplitude) * self.profile.sup
        return amplitude_bound**2


def sample_intensity(
    kernel: TruncatedKernel,
    kappa: float,
    rng: np.random.Generator,
    *,
    profile: CondensateProfile | None = None,
    uniform_phase: bool = True,
) -> Intensity:
    """
    Draw a random intensity |G|² for the Cox representation.
    """
    condensate = CondensateSpec(kappa=kappa, uniform_phase=uniform_phase)

    zeta = (rng.standard_normal(kernel.rank) + 1j * rng.standard_normal(kernel.rank)) / np.sqrt(2)
    amplitudes = np.sqrt(kernel.occupations) * zeta

    return Intensity(
        kernel=kernel,
        amplitudes=amplitudes,
        condensate_amplitude=condensate.draw_amplitude(rng),
        profile=profile if profile is not None else default_profile(kernel),
    )


def thin_poisson(intensity: Intensity, window: Window, rng: np.random.Generator) -> PointConfiguration:
    """
    Draw a Poisson process with this intensity on the window.
    """
    bound = intensity.bound()
    expected = bound * window.volume

    if not np.isfinite(expected) or expected > MAX_EXPECTED_CANDIDATES:
        raise ThinningBoundError(expected)

    n_candidates = rng.poisson(expected) if expected > 0 else 0
    candidates = window.uniform(rng, n_candidates)

    if n_candidates == 0:
        return PointConfiguration(points=np.empty((0, window.dimension)), window=window)

    accept = rng.random(n_candidates) * bound < intensity(candidates)

    return PointConfiguration(points=candidates[accept], window=window)


def sample_configuration(
    kernel: TruncatedKernel,
    kappa: float,
    window: Window,
    rng: np.random.Generator,
    *,
    profile: CondensateProfile | None = None,
) -> PointConfiguration:
    """
    Draw one configuration of the boson process (plus condensate) in
    a window inside the box.
    """
    if not window.is_inside(kernel.box):
        raise DomainError(f"Window {window.to_json()} is not inside the box {kernel.box.lengths}")

    intensity = sample_intensity(kernel, kappa, rng, profile=profile)
    return thin_poisson(intensity, window, rng)
