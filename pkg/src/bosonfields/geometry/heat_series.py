"""
Diagonal mode sums for boxes that are too big to enumerate.

The occupation of a Dirichlet mode expands as a geometric series,

    W_k = Σ_{n≥1} exp(−nβ(ε_k − ε_ground + Δ)),

and the Dirichlet spectrum factorises over the three axes.  So every
diagonal sum Σ_k W_k |φ_k(x)|² (or its box average) becomes a single
sum over n of a product of one-dimensional heat factors:

    Σ_k W_k |φ_k(x)|² = bose(βΔ)·∏ G_j  +  Σ_n e^{−nβΔ} (∏ F_j(τ_n) − ∏ G_j)

where τ_n = nβħ²/2m, F_j is the 1D Dirichlet heat kernel on axis j
(multiplied by e^{τπ²/L_j²} so the ground mode has weight 1) and
G_j = |φ_1|² on axis j.  The ground term is pulled out and summed in
closed form, so we never need the individual occupations.

Each axis is either a PointAxis (we evaluate at a point on that axis)
or a MeanAxis (we average over the axis).

For each axis we switch between two representations of the heat factor:

*   when a = τπ²/L² ≤ 1 the Gaussian image sum (or its Poisson dual)
    converges in a handful of terms
*   when a > 1 the spectral sum over k ≥ 2 does

This lets us evaluate boxes with sides of 10⁴⁰ and more, e.g. SLAB
boxes at L ≈ 100.

"""

from dataclasses import dataclass
import logging
import math

import numpy as np

from bosonfields.errors import StabilityError
from bosonfields.quadrature import quad
from .boxes import ThermoParams
from .spectrum import bose_factor


logger = logging.getLogger(__name__)


DIRECT_TERMS = 256

IMAGES = np.arange(-4, 5)[:, None]

SPECTRAL_K = np.arange(2, 12)[:, None]


@dataclass(frozen=True)
class PointAxis:
    L: float
    x: float


@dataclass(frozen=True)
class MeanAxis:
    L: float


Axis = PointAxis | MeanAxis


def ground_factor(axis: Axis) -> float:
    """
    The ground-mode weight G on this axis.
    """
    if isinstance(axis, PointAxis):
        return 2 / axis.L * math.cos(math.pi * axis.x / axis.L) ** 2
    else:
        return 1 / axis.L


def mean_theta(a: np.ndarray) -> np.ndarray:
    """
    T(a) = Σ_{k≥1} exp(−a(k² − 1)), for a > 0.

    Uses the Poisson dual when a ≤ 1, the direct sum otherwise.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    result = np.empty_like(a)

    small = a <= 1
    if np.any(small):
        a_s = a[small]
        theta = np.sum(np.exp(-(IMAGES**2) * math.pi**2 / a_s), axis=0)
        result[small] = np.exp(a_s) * 0.5 * (np.sqrt(math.pi / a_s) * theta - 1)

    if np.any(~small):
        a_l = a[~small]
        result[~small] = 1 + np.sum(np.exp(-a_l * (SPECTRAL_K**2 - 1)), axis=0)

    return result


def excited_factor(axis: Axis, a: np.ndarray) -> np.ndarray:
    """
    The excited part D = F − G of the heat factor on one axis, where
    a = τπ²/L² for every term of the series.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    result = np.empty_like(a)
    small = a <= 1

    if isinstance(axis, MeanAxis):
        if np.any(small):
            result[small] = (mean_theta(a[small]) - 1) / axis.L
        if np.any(~small):
            result[~small] = (
                np.sum(np.exp(-a[~small] * (SPECTRAL_K**2 - 1)), axis=0) / axis.L
            )
        return result

    L, x = axis.L, axis.x
    u = x + L / 2

    if np.any(small):
        a_s = a[small]
        tau = a_s * L**2 / math.pi**2

        def gaussian(z: np.ndarray) -> np.ndarray:
            return np.exp(-(z**2) / (4 * tau)) / np.sqrt(4 * math.pi * tau)  # type: ignore[no-any-return]

        images = np.sum(
            gaussian(2 * IMAGES * L) - gaussian(2 * u + 2 * IMAGES * L), axis=0
        )
        result[small] = np.exp(a_s) * images - ground_factor(axis)

    if np.any(~small):
        a_l = a[~small]
        weights = 2 / L * np.sin(math.pi * SPECTRAL_K / 2 + math.pi * SPECTRAL_K * x / L) ** 2
        result[~small] = np.sum(weights * np.exp(-a_l * (SPECTRAL_K**2 - 1)), axis=0)

    return result


def product_difference(
    axes: tuple[Axis, ...], thermo: ThermoParams, n: np.ndarray
) -> np.ndarray:
    """
    ∏ F_j(τ_n) − ∏ G_j, telescoped so that no large terms cancel:

        Σ_j D_j · ∏_{i<j} G_i · ∏_{i>j} F_i

    """
    n = np.atleast_1d(np.asarray(n, dtype=float))
    tau = n * thermo.beta * thermo.kinetic_coefficient

    grounds = [ground_factor(ax) for ax in axes]
    excited = [excited_factor(ax, tau * math.pi**2 / ax.L**2) for ax in axes]
    full = [g + d for g, d in zip(grounds, excited)]

    total = np.zeros_like(n)
    for j in range(len(axes)):
        term = excited[j]
        for i in range(j):
            term = term * grounds[i]
        for i in range(j + 1, len(axes)):
            term = term * full[i]
        total += term

    return total


def _series_cutoff(axes: tuple[Axis, ...], thermo: ThermoParams, delta: float) -> float:
    # Beyond this, every term is below e^{−50} of the leading ones.
    by_gap = 50 / (thermo.beta * delta)
    L_max = max(ax.L for ax in axes)
    by_size = 50 * L_max**2 / (3 * math.pi**2 * thermo.beta * thermo.kinetic_coefficient)
    return min(by_gap, by_size)


def diagonal_sum(
    axes: tuple[Axis, ...], thermo: ThermoParams, delta: float
) -> float:
    """
    Returns Σ_k W(k, L, Δ) ∏_j w_j(k_j), where w_j is |φ_{k_j}(x_j)|² on
    a PointAxis and 1/L_j on a MeanAxis.

    With three PointAxis this is the exact kernel diagonal K_Λ(x, x);
    with three MeanAxis it's the averaged density V⁻¹ Σ_k W_k.
    """
    if delta <= 0:
        raise StabilityError(delta)

    beta_delta = thermo.beta * delta

    ground = float(bose_factor(beta_delta)) * math.prod(ground_factor(ax) for ax in axes)

    def summand(n: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(-n * beta_delta) * product_difference(axes, thermo, n)  # type: ignore[no-any-return]

    n_direct = np.arange(1, DIRECT_TERMS + 1, dtype=float)
    direct = float(np.sum(summand(n_direct)))

    n_max = _series_cutoff(axes, thermo, delta)
    start = DIRECT_TERMS + 0.5

    tail = 0.0
    if n_max > start:
        breakpoints = [
            math.log(ax.L**2 / (math.pi**2 * thermo.beta * thermo.kinetic_coefficient))
            for ax in axes
        ]
        lo, hi = math.log(start), math.log(n_max)
        points = sorted({p for p in breakpoints if lo < p < hi})

        integral = quad(
            lambda t: float(summand(np.array([math.exp(t)]))[0]) * math.exp(t),
            lo,
            hi,
            points=points,
            limit=500,
        )

        # Euler-Maclaurin correction for the midpoint rule, with the
        # derivative at N + ½ taken as a central difference.
        edge = summand(np.array([DIRECT_TERMS + 1.0, float(DIRECT_TERMS)]))
        tail = integral + (edge[0] - edge[1]) / 24

    logger.debug(
        "Heat series: ground=%r, direct=%r, tail=%r, n_max=%r",
        ground,
        direct,
        tail,
        n_max,
    )

    return ground + direct + tail
