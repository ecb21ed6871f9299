"""
Infinite-volume densities of the ideal Bose gas.

The grand-canonical density with gap Δ∞ = −μ ≥ 0 is

    ρ(β, Δ∞) = λ_β^{-3} Σ_{n≥1} e^{−nβΔ∞} n^{−3/2}

which is the limit kernel evaluated on the diagonal.  At Δ∞ = 0 this
is the critical density ρ_c = ζ(3/2)/λ_β³.

"""

import logging
import math

from scipy import optimize

from bosonfields.errors import ConvergenceError, DomainError
from bosonfields.geometry import ThermoParams
from bosonfields.geometry.kernels import gaussian_series


logger = logging.getLogger(__name__)


def rho_of_delta(thermo: ThermoParams, delta_inf: float) -> float:
    """
    The density of the infinite gas with gap Δ∞ ≥ 0.
    """
    if delta_inf < 0:
        raise DomainError(f"Need Δ∞ ≥ 0, got {delta_inf!r}")

    if math.isinf(delta_inf):
        return 0.0

    return gaussian_series(thermo.beta * delta_inf, 0.0) / thermo.thermal_wavelength**3


def rho_critical(thermo: ThermoParams) -> float:
    return rho_of_delta(thermo, 0.0)


def rho_second_critical(thermo: ThermoParams, slab_alpha: float) -> float:
    """
    ρ_m = ρ_c + 2α/λ_β², the density above which a SLAB gas puts a
    macroscopic fraction of particles in the ground state.
    """
    if slab_alpha <= 0:
        raise DomainError(f"SLAB anisotropy rate must be > 0, got {slab_alpha!r}")

    return rho_critical(thermo) + 2 * slab_alpha / thermo.thermal_wavelength**2


def band_saturation_density(thermo: ThermoParams, slab_alpha: float) -> float:
    """
    2mα/(βπħ²), the largest value the quasi-condensate density κ2 can
    reach in a SLAB.
    """
    return 2 * thermo.mass * slab_alpha / (thermo.beta * math.pi * thermo.hbar**2)


def rho_second_critical_averaged(thermo: ThermoParams, slab_alpha: float) -> float:
    """
    The second critical density of the box-averaged density: ρ_c plus
    the averaged contribution κ2/2 of a saturated quasi-condensate band.

    This agrees with ``rho_second_critical``.
    """
    if slab_alpha <= 0:
        raise DomainError(f"SLAB anisotropy rate must be > 0, got {slab_alpha!r}")

    return rho_critical(thermo) + band_saturation_density(thermo, slab_alpha) / 2


def local_saturation_threshold(thermo: ThermoParams, slab_alpha: float) -> float:
    """
    ρ_c + 2mα/(βπħ²): the local density in the centre of the box once
    the quasi-condensate band has saturated.
    """
    return rho_critical(thermo) + band_saturation_density(thermo, slab_alpha)


def log_second_critical_discrepancy(thermo: ThermoParams, slab_alpha: float) -> None:
    """
    There are two forms of the second critical density in use, which
    disagree: ρ_c + 2α/λ_β², and 2mα/(βπħ²) with no ρ_c term.  We classify
    with the first, and log the second so the difference is visible.
    """
    rho_m = rho_second_critical(thermo, slab_alpha)
    variant = band_saturation_density(thermo, slab_alpha)

    logger.warning(
        "Second critical density: using ρ_m = ρ_c + 2α/λ² = %.9g; "
        "the variant 2mα/(βπħ²) = %.9g differs by %.3g",
        rho_m,
        variant,
        rho_m - variant,
    )


def invert_density(thermo: ThermoParams, rho: float) -> float:
    """
    Find the gap Δ∞ ≥ 0 with rho_of_delta(Δ∞) = ρ, for 0 < ρ ≤ ρ_c.

    Above ρ_c the gap is 0 in the limit, and the way it approaches 0
    depends on the geometry -- use the schedules in ``thermo.schedules``.
    """
    if not (rho > 0):
        raise DomainError(f"Density must be positive, got {rho!r}")

    rho_c = rho_critical(thermo)

    if rho > rho_c:
        raise DomainError(
            f"ρ={rho!r} is above the critical density ρ_c={rho_c!r}; "
            "use delta_schedule() for the gap in a finite box"
        )

    if rho == rho_c:
        return 0.0

    def excess(delta: float) -> float:
        return rho_of_delta(thermo, delta) - rho

    hi = 1 / thermo.beta
    while excess(hi) > 0:
        hi *= 2

    try:
        root = optimize.brentq(excess, 0.0, hi, xtol=1e-300, rtol=1e-13, maxiter=500)
    except (RuntimeError, ValueError) as err:
        raise ConvergenceError(f"Could not invert ρ={rho!r}: {err}", bracket=(0.0, hi))

    return float(root)
