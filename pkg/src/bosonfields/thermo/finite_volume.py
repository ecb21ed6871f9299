"""
Densities of a gas in a finite box, and the gap that produces a given
density.

Everything here is exact for the box: the averaged density
V⁻¹ Σ_k W(k, L, Δ) and the local density K_Λ(x, x) are computed with
the heat series in ``geometry.heat_series``, which handles boxes far too
large to enumerate.  If you pass a ``truncation``, we sum over the
retained modes instead.

"""

from collections.abc import Callable
import logging
import math

import numpy as np
from scipy import optimize

from bosonfields.errors import ConvergenceError, DomainError
from bosonfields.geometry import (
    Boundary,
    BoxGeometry,
    MeanAxis,
    PointAxis,
    ThermoParams,
    Truncation,
    bose_factor,
    build_kernel,
    diagonal_sum,
)
from bosonfields.geometry.spectrum import ground_mode, mode_energies


logger = logging.getLogger(__name__)


DensityFunction = Callable[[float], float]


def average_density(box: BoxGeometry, thermo: ThermoParams, delta: float) -> float:
    """
    ρ̄(L, Δ) = V⁻¹ Σ_k W(k, L, Δ), summed over every mode.
    """
    return diagonal_sum(tuple(MeanAxis(L) for L in box.lengths), thermo, delta)


def local_density(
    box: BoxGeometry,
    thermo: ThermoParams,
    delta: float,
    x: np.ndarray | tuple[float, ...],
) -> float:
    """
    K_Λ(x, x) = Σ_k W(k, L, Δ) |φ_k(x)|², summed over every mode.
    """
    box.check_contains(x)
    point = np.asarray(x, dtype=float)
    return diagonal_sum(
        tuple(PointAxis(L, float(xj)) for L, xj in zip(box.lengths, point)),
        thermo,
        delta,
    )


def truncated_density_function(
    box: BoxGeometry,
    thermo: ThermoParams,
    truncation: Truncation,
    bc: Boundary = "dirichlet",
) -> DensityFunction:
    """
    Returns Δ ↦ V⁻¹ Σ_k W(k, L, Δ) over the modes kept by ``truncation``.

    The set of kept modes doesn't depend on Δ, so we enumerate it once.
    """
    kernel = build_kernel(box, thermo, 1.0, truncation, bc)
    ground_energy = float(mode_energies(box, np.array([ground_mode(bc).as_tuple()]), bc, thermo)[0])
    excitations = mode_energies(box, kernel.modes, bc, thermo) - ground_energy

    def density(delta: float) -> float:
        return float(np.sum(bose_factor(thermo.beta * (excitations + delta)))) / box.volume

    return density


def solve_delta_finite(
    box: BoxGeometry,
    thermo: ThermoParams,
    rho: float,
    *,
    truncation: Truncation | None = None,
    bc: Boundary = "dirichlet",
) -> float:
    """
    Find the gap Δ > 0 with V⁻¹ Σ_k W(k, L, Δ) = ρ.

    The density is strictly decreasing in Δ, so we bracket the root in
    log Δ and refine it with Brent's method.
    """
    if not (rho > 0):
        raise DomainError(f"Density must be positive, got {rho!r}")

    if truncation is None:
        if bc != "dirichlet":
            raise DomainError("The untruncated density is only available for Dirichlet boxes")

        def density(delta: float) -> float:
            return average_density(box, thermo, delta)
    else:
        density = truncated_density_function(box, thermo, truncation, bc)

    def excess(log_delta: float) -> float:
        return density(math.exp(log_delta)) - rho

    # With only the ground mode, ρV = 1/(e^{βΔ} − 1).  The other modes
    # only add density, so the root lies at or above this.
    delta_lo = math.log1p(1 / (rho * box.volume)) / thermo.beta
    lo = math.log(delta_lo)

    f_lo = excess(lo)
    if abs(f_lo) <= 1e-14 * rho:
        return delta_lo

    shrink = 0
    while f_lo < 0:
        lo -= 1
        f_lo = excess(lo)
        shrink += 1
        if shrink > 50:
            raise ConvergenceError(
                f"Could not bracket Δ for ρ={rho!r} from below", bracket=(math.exp(lo), delta_lo)
            )

    step = 1.0
    hi = lo + step
    while excess(hi) > 0:
        lo = hi
        step *= 2
        hi = lo + step
        if hi > 700:
            raise ConvergenceError(
                f"Could not bracket Δ for ρ={rho!r} from above",
                bracket=(math.exp(lo), math.inf),
            )

    try:
        root = optimize.brentq(excess, lo, hi, xtol=1e-13, rtol=1e-15, maxiter=200)
    except (RuntimeError, ValueError) as err:
        raise ConvergenceError(
            f"Root search for Δ did not converge: {err}",
            bracket=(math.exp(lo), math.exp(hi)),
        )

    delta = math.exp(root)

    logger.debug("Solved Δ=%r for ρ=%r in box %r", delta, rho, box.lengths)

    return delta
