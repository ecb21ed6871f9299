"""
Gap schedules L ↦ Δ(L).

The way the gap Δ = ε_ground − μ closes as the box grows determines which
kind of condensate forms.  Each schedule knows its value at L (also in
log-space, because the gaps we care about can be far smaller than the
smallest float), its limit Δ∞, and how to describe itself in a report.

"""

import abc
from dataclasses import dataclass
import math

from bosonfields.errors import DomainError, UnsupportedRegimeError
from bosonfields.geometry import (
    AnisotropyProfile,
    BeamProfile,
    SlabProfile,
    ThermoParams,
)
from bosonfields.types import GapScheduleConfig, ScheduleDescription
from .densities import invert_density, rho_critical, rho_second_critical
from .phi import phi_inverse


class GapSchedule(abc.ABC):
    @abc.abstractmethod
    def log_delta(self, L: float) -> float:
        """
        Returns log Δ(L).
        """
        raise NotImplementedError

    def delta(self, L: float) -> float:
        return math.exp(self.log_delta(L))

    @property
    @abc.abstractmethod
    def delta_inf(self) -> float:
        raise NotImplementedError

    @abc.abstractmethod
    def describe(self) -> ScheduleDescription:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantGap(GapSchedule):
    value: float

    def __post_init__(self) -> None:
        if not (self.value >= 0):
            raise DomainError(f"Gap must be ≥ 0, got {self.value!r}")

    def log_delta(self, L: float) -> float:
        return math.log(self.value) if self.value > 0 else -math.inf

    @property
    def delta_inf(self) -> float:
        return self.value

    def describe(self) -> ScheduleDescription:
        return {
            "kind": "constant",
            "formula": "Δ(L) = Δ∞",
            "coefficients": {"delta": self.value},
            "delta_inf": self.value,
        }


@dataclass(frozen=True)
class ExponentialGap(GapSchedule):
    """
    Δ(L) = prefactor · e^{−rate·L}
    """

    rate: float
    prefactor: float = 1.0

    def log_delta(self, L: float) -> float:
        return math.log(self.prefactor) - self.rate * L

    @property
    def delta_inf(self) -> float:
        return 0.0

    def describe(self) -> ScheduleDescription:
        return {
            "kind": "exponential",
            "formula": "Δ(L) = prefactor · exp(−rate·L)",
            "coefficients": {"rate": self.rate, "prefactor": self.prefactor},
            "delta_inf": 0.0,
        }


@dataclass(frozen=True)
class VolumeGap(GapSchedule):
    """
    Δ(L) = 1 / (weight · L³e^{2αL}), i.e. the gap closes like the
    inverse volume of a SLAB.
    """

    alpha: float
    weight: float

    def log_delta(self, L: float) -> float:
        return -math.log(self.weight) - 3 * math.log(L) - 2 * self.alpha * L

    @property
    def delta_inf(self) -> float:
        return 0.0

    def describe(self) -> ScheduleDescription:
        return {
            "kind": "volume",
            "formula": "Δ(L) = 1 / (weight · L³ exp(2αL))",
            "coefficients": {"alpha": self.alpha, "weight": self.weight},
            "delta_inf": 0.0,
        }


@dataclass(frozen=True)
class PowerGap(GapSchedule):
    """
    Δ(L) = coefficient / L^power
    """

    coefficient: float
    power: float

    def log_delta(self, L: float) -> float:
        return math.log(self.coefficient) - self.power * math.log(L)

    @property
    def delta_inf(self) -> float:
        return 0.0

    def describe(self) -> ScheduleDescription:
        return {
            "kind": "power",
            "formula": "Δ(L) = coefficient / L^power",
            "coefficients": {"coefficient": self.coefficient, "power": self.power},
            "delta_inf": 0.0,
        }


def beam_type_ii_schedule(thermo: ThermoParams, rho: float) -> PowerGap:
    """
    In a BEAM with γ = 2 above ρ_c, Δ(L) = (π²ħ²/2mL⁴) · φ⁻¹(y) with
    y = (ρ − ρ_c)βπ²ħ²/16m.
    """
    y = (rho - rho_critical(thermo)) * thermo.beta * math.pi**2 * thermo.hbar**2 / (16 * thermo.mass)
    coefficient = math.pi**2 * thermo.hbar**2 / (2 * thermo.mass) * phi_inverse(y)
    return PowerGap(coefficient=coefficient, power=4)


def beam_ground_state_schedule(thermo: ThermoParams, rho: float, gamma: float) -> PowerGap:
    """
    In a BEAM with γ < 2 above ρ_c, the excess density goes into the
    ground state: Δ(L) = 1 / (β(ρ − ρ_c)L^{2+γ}).
    """
    excess = rho - rho_critical(thermo)
    return PowerGap(coefficient=1 / (thermo.beta * excess), power=2 + gamma)


def beam_band_schedule(thermo: ThermoParams, rho: float) -> PowerGap:
    """
    In a BEAM with γ > 2 above ρ_c, the excess density spreads over the
    modes along the long axis, whose spacing π²ħ²/2mL^{2γ} is much
    smaller than Δ.  Replacing the sum over them by an integral gives

        Δ(L) = 8m / (β²ħ²(ρ − ρ_c)²) · L⁻⁴

    which is the limit of the γ = 2 schedule as ρ → ρ_c.
    """
    excess = rho - rho_critical(thermo)
    coefficient = 8 * thermo.mass / (thermo.beta**2 * thermo.hbar**2 * excess**2)
    return PowerGap(coefficient=coefficient, power=4)


def gap_schedule(profile: AnisotropyProfile, thermo: ThermoParams, rho: float) -> GapSchedule:
    """
    The leading-order gap schedule for a gas of density ρ.
    """
    if not (rho > 0):
        raise DomainError(f"Density must be positive, got {rho!r}")

    if not isinstance(profile, (SlabProfile, BeamProfile)):
        raise UnsupportedRegimeError(
            "Gap schedules are only defined for SLAB and BEAM profiles"
        )

    rho_c = rho_critical(thermo)

    if rho <= rho_c:
        return ConstantGap(invert_density(thermo, rho))

    if isinstance(profile, SlabProfile):
        rho_m = rho_second_critical(thermo, profile.alpha)

        if rho <= rho_m:
            return ExponentialGap(
                rate=thermo.thermal_wavelength**2 * (rho - rho_c),
                prefactor=1 / thermo.beta,
            )
        else:
            return VolumeGap(alpha=profile.alpha, weight=thermo.beta * (rho - rho_m))

    if profile.gamma != 2:
        raise UnsupportedRegimeError(
            f"Above ρ_c the BEAM gap schedule is only known for γ = 2, got γ={profile.gamma!r}"
        )

    return beam_type_ii_schedule(thermo, rho)


def delta_schedule(profile: AnisotropyProfile, thermo: ThermoParams, rho: float, L: float) -> float:
    """
    Δ(L) for a gas of density ρ.
    """
    return gap_schedule(profile, thermo, rho).delta(L)


def schedule_from_config(config: GapScheduleConfig) -> GapSchedule:
    if config["kind"] == "constant":
        return ConstantGap(config["delta"])
    elif config["kind"] == "exponential":
        return ExponentialGap(rate=config["rate"], prefactor=config.get("prefactor", 1.0))
    elif config["kind"] == "volume":
        return VolumeGap(alpha=config["alpha"], weight=config["weight"])
    else:
        return PowerGap(coefficient=config["coefficient"], power=config["power"])


def expand_schedule_config(config: GapScheduleConfig) -> GapScheduleConfig:
    """
    Fill in any defaults, so the config can be written back out as
    part of ``effective_config.json``.
    """
    if config["kind"] == "exponential":
        return {
            "kind": "exponential",
            "rate": config["rate"],
            "prefactor": config.get("prefactor", 1.0),
        }
    return config
