"""
Sampling the infinite-volume boson process with a condensate.

The Gaussian part has the translation-invariant covariance K^{Δ∞}.  We
realise it on a periodic cube around the window, with side

    ℓ = max(3 · diameter of the window, 4λ_β)

and plane-wave modes up to βε ≤ 10.  One flat mode carries whatever
occupation is needed to make the diagonal exactly K^{Δ∞}(x, x) = ρ(Δ∞);
when Δ∞ = 0 it replaces the p = 0 plane wave, whose true occupation is
infinite.

The condensate is a flat field √(κt)·e^{iθ} with t ~ Exp(1).

"""

from dataclasses import dataclass
import functools
import logging

import numpy as np

from bosonfields.errors import StabilityError
from bosonfields.geometry import (
    BoxGeometry,
    TestFunction,
    ThermoParams,
    TruncatedKernel,
    Window,
    bose_factor,
)
from bosonfields.geometry.kernels import enumerate_modes, sort_modes
from bosonfields.thermo import rho_of_delta
from .condensate import FlatProfile
from .cox import PointConfiguration, sample_intensity, thin_poisson
from .fredholm import laplace_closed


logger = logging.getLogger(__name__)


EMBEDDING_DIAMETERS = 3.0

EMBEDDING_WAVELENGTHS = 4.0

ENERGY_CUTOFF = 10.0


@dataclass(frozen=True)
class LimitEmbedding:
    kernel: TruncatedKernel
    window: Window
    delta_inf: float
    zero_mode_occupation: float

    @property
    def centre(self) -> np.ndarray:
        return self.window.centre

    @property
    def local_window(self) -> Window:
        c = self.centre
        return Window(
            lower=tuple(float(x) for x in np.array(self.window.lower) - c),
            upper=tuple(float(x) for x in np.array(self.window.upper) - c),
        )

    def to_local(self, f: TestFunction) -> TestFunction:
        """
        Translate a test function into the coordinates of the embedding
        box, which is centred on the window.
        """
        c = self.centre
        support = Window(
            lower=tuple(float(x) for x in np.array(f.support.lower) - c),
            upper=tuple(float(x) for x in np.array(f.support.upper) - c),
        )
        return TestFunction(func=lambda pts: f.func(pts + c), support=support, name=f.name)

    def sample(self, kappa: float, rng: np.random.Generator) -> PointConfiguration:
        intensity = sample_intensity(self.kernel, kappa, rng, profile=FlatProfile())
        local = thin_poisson(intensity, self.local_window, rng)
        return PointConfiguration(points=local.points + self.centre, window=self.window)

    def laplace_closed(self, f: TestFunction, kappa: float = 0.0) -> float:
        return laplace_closed(self.kernel, self.to_local(f), kappa, profile=FlatProfile())


@functools.lru_cache(maxsize=32)
def embed_limit_kernel(
    thermo: ThermoParams,
    delta_inf: float,
    window: Window,
    *,
    side_factor: float = EMBEDDING_DIAMETERS,
    energy_cutoff: float = ENERGY_CUTOFF,
) -> LimitEmbedding:
    """
    Build the periodic embedding of K^{Δ∞} around a window.
    """
    if delta_inf < 0:
        raise StabilityError(delta_inf)

    side = max(side_factor * window.diameter, EMBEDDING_WAVELENGTHS * thermo.thermal_wavelength)
    box = BoxGeometry(side, side, side)

    modes, energies = enumerate_modes(box, thermo, "periodic", energy_cutoff / thermo.beta)
    order = sort_modes(modes, energies)
    modes, energies = modes[order], energies[order]

    excited = np.any(modes != 0, axis=1)
    modes, energies = modes[excited], energies[excited]
    occupations = bose_factor(thermo.beta * (energies + delta_inf))

    target = rho_of_delta(thermo, delta_inf) * box.volume
    zero_mode = target - float(np.sum(occupations))

    if zero_mode < 0:
        logger.warning(
            "Plane waves in the embedding overshoot the density by %g; "
            "dropping the flat mode",
            -zero_mode,
        )
        zero_mode = 0.0

    true_zero_mode = float(bose_factor(thermo.beta * delta_inf)) if delta_inf > 0 else 0.0

    kernel = TruncatedKernel(
        box=box,
        thermo=thermo,
        delta=delta_inf,
        bc="periodic",
        modes=np.vstack([np.zeros((1, 3), dtype=int), modes]),
        occupations=np.concatenate([[zero_mode], occupations]),
        tail_bound=max(zero_mode - true_zero_mode, 0.0),
        is_limit=True,
    )

    logger.debug(
        "Embedded K^Δ∞ (Δ∞=%r) in a periodic cube of side %g with %d modes; flat mode %g",
        delta_inf,
        side,
        kernel.rank,
        zero_mode,
    )

    return LimitEmbedding(
        kernel=kernel, window=window, delta_inf=delta_inf, zero_mode_occupation=zero_mode
    )


def sample_limit_process(
    thermo: ThermoParams,
    kappa: float,
    window: Window,
    rng: np.random.Generator,
    *,
    delta_inf: float = 0.0,
) -> PointConfiguration:
    """
    Draw one configuration of the infinite-volume process in a window.
    """
    return embed_limit_kernel(thermo, delta_inf, window).sample(kappa, rng)
