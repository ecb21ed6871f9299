"""
Boxes, anisotropy profiles and thermodynamic parameters.

A box is Λ = ∏ [−L_j/2, L_j/2].  The two anisotropic families we care
about grow with a single scale parameter L:

*   SLAB:  L₁ = L₂ = L·e^{αL}, L₃ = L
*   BEAM:  L₁ = L^γ, L₂ = L₃ = L

The SLAB sides grow exponentially, so it's easy to overflow a float --
we check the volume in log-space before building anything.

"""

from dataclasses import dataclass
import math
import sys

import numpy as np
from scipy import optimize

from bosonfields.errors import DomainError, FloatRangeError


LOG_FLOAT_MAX = math.log(sys.float_info.max)


@dataclass(frozen=True)
class ThermoParams:
    """
    Inverse temperature β and the units ħ, m.  We default to ħ = m = 1.
    """

    beta: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self) -> None:
        for name in ("beta", "hbar", "mass"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    @property
    def kinetic_coefficient(self) -> float:
        """
        The coefficient ħ²/2m in front of |k|² in the one-particle energy.
        """
        return self.hbar**2 / (2 * self.mass)

    @property
    def thermal_wavelength(self) -> float:
        """
        λ_β = ħ·sqrt(2πβ/m)
        """
        return self.hbar * math.sqrt(2 * math.pi * self.beta / self.mass)


@dataclass(frozen=True)
class SlabProfile:
    alpha: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"SLAB anisotropy rate must be > 0, got {self.alpha!r}")


@dataclass(frozen=True)
class BeamProfile:
    gamma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise DomainError(f"BEAM exponent must be > 0, got {self.gamma!r}")


@dataclass(frozen=True)
class ExplicitProfile:
    L1: float
    L2: float
    L3: float

    def __post_init__(self) -> None:
        for side in (self.L1, self.L2, self.L3):
            if not (math.isfinite(side) and side > 0):
                raise DomainError(f"Box sides must be positive and finite, got {side!r}")


AnisotropyProfile = SlabProfile | BeamProfile | ExplicitProfile


@dataclass(frozen=True)
class BoxGeometry:
    L1: float
    L2: float
    L3: float

    def __post_init__(self) -> None:
        for side in self.lengths:
            if not (math.isfinite(side) and side > 0):
                raise DomainError(f"Box sides must be positive and finite, got {side!r}")

    @property
    def lengths(self) -> tuple[float, float, float]:
        return (self.L1, self.L2, self.L3)

    @property
    def volume(self) -> float:
        return self.L1 * self.L2 * self.L3

    def contains(self, x: np.ndarray | tuple[float, ...], *, rtol: float = 1e-12) -> bool:
        """
        Returns True if every point in ``x`` (shape (3,) or (n, 3))
        lies in the closed box.
        """
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        half = 0.5 * np.array(self.lengths)
        return bool(np.all(np.abs(pts) <= half * (1 + rtol)))

    def check_contains(self, x: np.ndarray | tuple[float, ...]) -> None:
        if not self.contains(x):
            raise DomainError(f"Position(s) lie outside the box {self.lengths}")


def _log_volume(profile: SlabProfile | BeamProfile, L: float) -> float:
    if isinstance(profile, SlabProfile):
        return 3 * math.log(L) + 2 * profile.alpha * L
    else:
        return (2 + profile.gamma) * math.log(L)


def max_admissible_L(profile: SlabProfile | BeamProfile) -> float:
    """
    The largest L for which every side and the volume of the box are
    finite floats.
    """
    # Leave a little headroom so products of the sides stay finite.
    limit = LOG_FLOAT_MAX - 1.0

    def excess(log_L: float) -> float:
        return _log_volume(profile, math.exp(log_L)) - limit

    hi = 1.0
    while excess(hi) < 0:
        hi *= 2
    return math.exp(optimize.brentq(excess, -50.0, hi, xtol=1e-12))


def box_from_profile(profile: AnisotropyProfile, L: float) -> BoxGeometry:
    """
    Build the box for scale parameter L.
    """
    if isinstance(profile, ExplicitProfile):
        return BoxGeometry(profile.L1, profile.L2, profile.L3)

    if not (math.isfinite(L) and L > 0):
        raise DomainError(f"L must be positive and finite, got {L!r}")

    if _log_volume(profile, L) > LOG_FLOAT_MAX - 1.0:
        raise FloatRangeError(
            quantity="box volume", L=L, max_L=max_admissible_L(profile)
        )

    if isinstance(profile, SlabProfile):
        wide = L * math.exp(profile.alpha * L)
        return BoxGeometry(wide, wide, L)
    else:
        return BoxGeometry(L**profile.gamma, L, L)
