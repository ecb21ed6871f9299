"""
Phase classification for SLAB and BEAM boxes.

SLAB (L e^{αL}, L e^{αL}, L):

*   ρ ≤ ρ_c          Normal
*   ρ_c < ρ ≤ ρ_m    TypeIII (a quasi-condensate spread over a band of
                     low-lying states, κ2 > 0)
*   ρ > ρ_m          TypeI_plus_III (the band saturates and the ground
                     state picks up the rest, κ1 > 0)

BEAM (L^γ, L, L), above ρ_c:

*   γ < 2            TypeI
*   γ = 2            TypeII (κ̃ > 0)
*   γ > 2            TypeIII

"""

from collections.abc import Sequence
from dataclasses import dataclass, field
import logging
import math

from bosonfields.errors import DomainError, UnsupportedRegimeError
from bosonfields.geometry import AnisotropyProfile, BeamProfile, SlabProfile, ThermoParams
from bosonfields.types import Phase, PhaseReportJson
from .densities import (
    log_second_critical_discrepancy,
    rho_critical,
    rho_of_delta,
    rho_second_critical,
    rho_second_critical_averaged,
)
from .kappas import (
    LimitEstimate,
    beam_kappa_tilde_limit,
    kappa_tilde_beam,
    kappas_slab,
    slab_kappa_limits,
)
from .schedules import (
    GapSchedule,
    beam_band_schedule,
    beam_ground_state_schedule,
    gap_schedule,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseReport:
    phase: Phase
    rho: float | None
    rho_c: float
    rho_m: float | None = None
    rho_m_averaged: float | None = None
    kappa1: float | None = None
    kappa2: float | None = None
    kappa_tilde: float | None = None
    schedule: GapSchedule | None = None
    extrapolation: dict[str, LimitEstimate] = field(default_factory=dict)

    def to_json(self) -> PhaseReportJson:
        return {
            "phase": self.phase,
            "rho": self.rho,
            "rho_c": self.rho_c,
            "rho_m": self.rho_m,
            "rho_m_averaged": self.rho_m_averaged,
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "kappa_tilde": self.kappa_tilde,
            "delta_schedule": self.schedule.describe() if self.schedule is not None else None,
            "extrapolation": (
                {name: est.to_json() for name, est in self.extrapolation.items()}
                if self.extrapolation
                else None
            ),
        }

    def summary(self) -> str:
        """
        A human-readable description of the report.
        """
        lines = [f"phase: {self.phase}"]

        for name in ("rho", "rho_c", "rho_m", "kappa1", "kappa2", "kappa_tilde"):
            value = getattr(self, name)
            if value is not None:
                lines.append(f"{name}: {value:.9g}")

        if self.schedule is not None:
            lines.append(f"schedule: {self.schedule.describe()['formula']}")

        return "\n".join(lines)


def classify_phase(profile: AnisotropyProfile, thermo: ThermoParams, rho: float) -> PhaseReport:
    """
    Classify a gas of density ρ, with the matching gap schedule and κ's.
    """
    if not (rho > 0):
        raise DomainError(f"Density must be positive, got {rho!r}")

    rho_c = rho_critical(thermo)

    if isinstance(profile, SlabProfile):
        alpha = profile.alpha
        rho_m = rho_second_critical(thermo, alpha)
        log_second_critical_discrepancy(thermo, alpha)

        schedule = gap_schedule(profile, thermo, rho)

        phase: Phase
        if rho <= rho_c:
            # At ρ = ρ_c the schedule is Δ ≡ 0, but there is no excess
            # density to condense.
            phase = "Normal"
            kappa1, kappa2 = 0.0, 0.0
        else:
            phase = "TypeIII" if rho <= rho_m else "TypeI_plus_III"
            kappa1, kappa2 = slab_kappa_limits(thermo, alpha, schedule)

        return PhaseReport(
            phase=phase,
            rho=rho,
            rho_c=rho_c,
            rho_m=rho_m,
            rho_m_averaged=rho_second_critical_averaged(thermo, alpha),
            kappa1=kappa1,
            kappa2=kappa2,
            schedule=schedule,
        )

    elif isinstance(profile, BeamProfile):
        gamma = profile.gamma

        if rho <= rho_c:
            schedule = gap_schedule(profile, thermo, rho)
            return PhaseReport(
                phase="Normal",
                rho=rho,
                rho_c=rho_c,
                kappa_tilde=0.0,
                schedule=schedule,
            )

        if gamma < 2:
            schedule = beam_ground_state_schedule(thermo, rho, gamma)
            return PhaseReport(
                phase="TypeI",
                rho=rho,
                rho_c=rho_c,
                kappa_tilde=beam_kappa_tilde_limit(thermo, schedule),
                schedule=schedule,
            )
        elif gamma == 2:
            schedule = gap_schedule(profile, thermo, rho)
            return PhaseReport(
                phase="TypeII",
                rho=rho,
                rho_c=rho_c,
                kappa_tilde=beam_kappa_tilde_limit(thermo, schedule),
                schedule=schedule,
            )
        else:
            # The φ form of κ̃ counts γ = 2 mode spacings; here each
            # long-axis mode holds a vanishing share of the excess.
            return PhaseReport(
                phase="TypeIII",
                rho=rho,
                rho_c=rho_c,
                kappa_tilde=0.0,
                schedule=beam_band_schedule(thermo, rho),
            )

    raise UnsupportedRegimeError("Phase classification needs a SLAB or BEAM profile")


def _is_positive(estimate: LimitEstimate, scale: float) -> bool:
    return estimate.value > 1e-6 * scale


def phase_from_schedule(
    profile: AnisotropyProfile,
    thermo: ThermoParams,
    schedule: GapSchedule,
    L_sequence: Sequence[float],
) -> PhaseReport:
    """
    Classify the gas produced by a given gap schedule, from κ's computed
    numerically along ``L_sequence``.

    The density isn't an input here; we report the averaged density
    K^{Δ∞}(x,x) + κ2/2 + κ1/8 that the schedule produces (SLAB only).
    """
    rho_c = rho_critical(thermo)
    background = rho_of_delta(thermo, schedule.delta_inf)

    if isinstance(profile, SlabProfile):
        kappa1, kappa2 = kappas_slab(thermo, profile.alpha, schedule, L_sequence)

        phase: Phase
        if _is_positive(kappa1, rho_c):
            phase = "TypeI_plus_III"
        elif _is_positive(kappa2, rho_c):
            phase = "TypeIII"
        else:
            phase = "Normal"

        rho = background + kappa2.value / 2 + kappa1.value / 8

        return PhaseReport(
            phase=phase,
            rho=rho if math.isfinite(rho) else None,
            rho_c=rho_c,
            rho_m=rho_second_critical(thermo, profile.alpha),
            rho_m_averaged=rho_second_critical_averaged(thermo, profile.alpha),
            kappa1=kappa1.value,
            kappa2=kappa2.value,
            schedule=schedule,
            extrapolation={"kappa1": kappa1, "kappa2": kappa2},
        )

    elif isinstance(profile, BeamProfile) and profile.gamma == 2:
        kappa_tilde = kappa_tilde_beam(thermo, schedule, L_sequence)

        return PhaseReport(
            phase="TypeII" if _is_positive(kappa_tilde, rho_c) else "Normal",
            rho=None,
            rho_c=rho_c,
            kappa_tilde=kappa_tilde.value,
            schedule=schedule,
            extrapolation={"kappa_tilde": kappa_tilde},
        )

    raise UnsupportedRegimeError(
        "Classifying from a schedule needs a SLAB profile or a BEAM with γ = 2"
    )
