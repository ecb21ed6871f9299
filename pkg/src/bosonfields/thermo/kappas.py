"""
The κ parameters, which measure how much of the density sits in each
kind of condensate.

SLAB:

    κ1 = lim 8 / (βΔ(L) L³e^{2αL})                       (ground state)
    κ2 = lim (m/βπħ²L) · log[(L²e^{2αL}) ∧ (βΔ(L))⁻¹]     (quasi-condensate band)

BEAM (γ = 2):

    κ̃ = (16m/βπ²ħ²) · lim φ(2mL⁴Δ(L)/π²ħ²)

We compute each limit two ways: in closed form from the schedule, and
numerically by evaluating along a sequence of L and extrapolating.

"""

from collections.abc import Sequence
from dataclasses import dataclass
import logging
import math

import numpy as np

from bosonfields.errors import DomainError
from bosonfields.geometry import ThermoParams
from bosonfields.types import LimitEstimateJson
from .phi import phi
from .schedules import ConstantGap, ExponentialGap, GapSchedule, PowerGap, VolumeGap


logger = logging.getLogger(__name__)


# An extrapolated limit counts as converged if dropping the smallest L
# moves it by less than this, relative to its size.
CONVERGENCE_TOLERANCE = 1e-2


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    trend: float
    converged: bool

    def to_json(self) -> LimitEstimateJson:
        return {"value": self.value, "trend": self.trend, "converged": self.converged}


def _fit_limit(L: np.ndarray, values: np.ndarray) -> float:
    """
    Least-squares fit of values ≈ c0 + c1/L + c2·log(L)/L, returning c0.
    """
    columns = [np.ones_like(L), 1 / L, np.log(L) / L][: min(3, len(L))]
    basis = np.column_stack(columns)
    coefficients, *_ = np.linalg.lstsq(basis, values, rcond=None)
    return float(coefficients[0])


def extrapolate(L_sequence: Sequence[float], values: Sequence[float]) -> LimitEstimate:
    """
    Extrapolate a sequence of finite-L values to L = ∞.

    We fit c0 + c1/L + c2·log(L)/L, and report as the trend how far the
    fitted limit moves when we drop the smallest L.  Sequences that blow
    up are reported as not converged, rather than raising.
    """
    L = np.asarray(L_sequence, dtype=float)
    v = np.asarray(values, dtype=float)

    if len(L) == 0 or len(L) != len(v):
        raise DomainError("Need the same, non-zero number of L values and sequence values")

    if np.any(~np.isfinite(v)):
        return LimitEstimate(value=math.inf, trend=math.inf, converged=False)

    if len(L) == 1:
        return LimitEstimate(value=float(v[0]), trend=math.inf, converged=False)

    order = np.argsort(L)
    L, v = L[order], v[order]

    # Sequences that collapse to zero (e.g. exponentially) are badly
    # described by the fit; their limit is 0.
    scale = max(float(np.max(np.abs(v))), 1e-300)
    if abs(v[-1]) <= CONVERGENCE_TOLERANCE**2 * scale:
        return LimitEstimate(value=float(v[-1]), trend=float(abs(v[-1] - v[-2])), converged=True)

    value = _fit_limit(L, v)
    previous = _fit_limit(L[1:], v[1:]) if len(L) > 2 else float(v[-1])
    trend = abs(value - previous)

    converged = trend <= CONVERGENCE_TOLERANCE * max(abs(value), abs(float(v[-1])))

    # A sequence that's still growing fast isn't converging, whatever
    # the fit says.
    if len(v) >= 3 and v[-1] > v[-2] > v[-3] and (v[-1] - v[-2]) >= (v[-2] - v[-3]) > 0:
        converged = False

    if not converged:
        logger.warning(
            "Limit did not converge: estimate %.6g, trend %.3g over L=%s",
            value,
            trend,
            list(L),
        )

    return LimitEstimate(value=value, trend=trend, converged=converged)


def _exp_clipped(log_value: float) -> float:
    return math.inf if log_value > 700 else math.exp(log_value)


def kappa1_at(thermo: ThermoParams, slab_alpha: float, schedule: GapSchedule, L: float) -> float:
    """
    8 / (βΔ(L) L³e^{2αL}), computed in log-space.
    """
    log_value = (
        math.log(8)
        - math.log(thermo.beta)
        - schedule.log_delta(L)
        - 3 * math.log(L)
        - 2 * slab_alpha * L
    )
    return _exp_clipped(log_value)


def kappa2_at(thermo: ThermoParams, slab_alpha: float, schedule: GapSchedule, L: float) -> float:
    """
    (m/βπħ²L) · log[(L²e^{2αL}) ∧ (βΔ(L))⁻¹].

    κ2 is a density, so a negative finite-L value (when βΔ > 1) is
    clipped at zero.
    """
    log_band = 2 * math.log(L) + 2 * slab_alpha * L
    log_gap = -(math.log(thermo.beta) + schedule.log_delta(L))
    prefactor = thermo.mass / (thermo.beta * math.pi * thermo.hbar**2 * L)
    return prefactor * max(min(log_band, log_gap), 0.0)


def kappa_tilde_at(thermo: ThermoParams, schedule: GapSchedule, L: float) -> float:
    """
    (16m/βπ²ħ²) · φ(2mL⁴Δ(L)/π²ħ²)
    """
    log_argument = (
        math.log(2 * thermo.mass / (math.pi**2 * thermo.hbar**2))
        + 4 * math.log(L)
        + schedule.log_delta(L)
    )
    argument = _exp_clipped(log_argument)
    return 16 * thermo.mass / (thermo.beta * math.pi**2 * thermo.hbar**2) * phi(argument)


def kappas_slab(
    thermo: ThermoParams,
    slab_alpha: float,
    schedule: GapSchedule,
    L_sequence: Sequence[float],
) -> tuple[LimitEstimate, LimitEstimate]:
    """
    Numerical (κ1, κ2) from the schedule evaluated along ``L_sequence``.
    """
    kappa1 = extrapolate(
        L_sequence, [kappa1_at(thermo, slab_alpha, schedule, L) for L in L_sequence]
    )
    kappa2 = extrapolate(
        L_sequence, [kappa2_at(thermo, slab_alpha, schedule, L) for L in L_sequence]
    )
    return kappa1, kappa2


def kappa_tilde_beam(
    thermo: ThermoParams, schedule: GapSchedule, L_sequence: Sequence[float]
) -> LimitEstimate:
    """
    Numerical κ̃ from the schedule evaluated along ``L_sequence``.
    """
    return extrapolate(L_sequence, [kappa_tilde_at(thermo, schedule, L) for L in L_sequence])


def _band_coefficient(thermo: ThermoParams) -> float:
    return thermo.mass / (thermo.beta * math.pi * thermo.hbar**2)


def slab_kappa_limits(
    thermo: ThermoParams, slab_alpha: float, schedule: GapSchedule
) -> tuple[float, float]:
    """
    The exact (κ1, κ2) for a schedule.
    """
    coefficient = _band_coefficient(thermo)

    if isinstance(schedule, ConstantGap) and schedule.value == 0:
        # The gap is closed at every L, faster than any band can fill.
        return (math.inf, coefficient * 2 * slab_alpha)

    elif isinstance(schedule, (ConstantGap, PowerGap)):
        return (0.0, 0.0)

    elif isinstance(schedule, ExponentialGap):
        if schedule.rate > 2 * slab_alpha:
            kappa1 = math.inf
        else:
            kappa1 = 0.0
        kappa2 = coefficient * min(schedule.rate, 2 * slab_alpha)
        return (kappa1, kappa2)

    elif isinstance(schedule, VolumeGap):
        if schedule.alpha > slab_alpha:
            kappa1 = math.inf
        elif schedule.alpha < slab_alpha:
            kappa1 = 0.0
        else:
            kappa1 = 8 * schedule.weight / thermo.beta
        kappa2 = coefficient * 2 * min(schedule.alpha, slab_alpha)
        return (kappa1, kappa2)

    raise TypeError(f"Unrecognised schedule: {schedule!r}")  # pragma: no cover


def beam_kappa_tilde_limit(thermo: ThermoParams, schedule: GapSchedule) -> float:
    """
    The exact κ̃ for a schedule.
    """
    prefactor = 16 * thermo.mass / (thermo.beta * math.pi**2 * thermo.hbar**2)

    if isinstance(schedule, ConstantGap):
        return 0.0 if schedule.value > 0 else math.inf

    elif isinstance(schedule, PowerGap):
        if schedule.power < 4:
            return 0.0
        elif schedule.power > 4:
            return math.inf
        else:
            argument = 2 * thermo.mass * schedule.coefficient / (math.pi**2 * thermo.hbar**2)
            return prefactor * phi(argument)

    # The exponential and volume gaps close faster than any power.
    return math.inf


def beam_alpha_squared(thermo: ThermoParams, schedule: PowerGap) -> float:
    """
    α² = lim 2mL⁴Δ(L)/π²ħ² − 1, the parameter of the R kernel, for a
    schedule Δ(L) = c/L⁴.
    """
    if schedule.power != 4:
        raise DomainError(f"Need a schedule Δ(L) = c/L⁴, got power {schedule.power!r}")

    return 2 * thermo.mass * schedule.coefficient / (math.pi**2 * thermo.hbar**2) - 1
