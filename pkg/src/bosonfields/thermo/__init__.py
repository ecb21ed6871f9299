from .densities import (
    invert_density,
    local_saturation_threshold,
    rho_critical,
    rho_of_delta,
    rho_second_critical,
    rho_second_critical_averaged,
)
from .finite_volume import average_density, local_density, solve_delta_finite
from .kappas import (
    LimitEstimate,
    beam_alpha_squared,
    beam_kappa_tilde_limit,
    extrapolate,
    kappa_tilde_beam,
    kappas_slab,
    slab_kappa_limits,
)
from .phases import PhaseReport, classify_phase, phase_from_schedule
from .phi import phi, phi_digamma, phi_inverse, phi_series, phi_tail
from .schedules import (
    ConstantGap,
    ExponentialGap,
    GapSchedule,
    PowerGap,
    VolumeGap,
    delta_schedule,
    expand_schedule_config,
    gap_schedule,
    schedule_from_config,
)
from .cli import phase as phase_cli


__all__ = [
    "ConstantGap",
    "ExponentialGap",
    "GapSchedule",
    "LimitEstimate",
    "PhaseReport",
    "PowerGap",
    "VolumeGap",
    "average_density",
    "beam_alpha_squared",
    "beam_kappa_tilde_limit",
    "classify_phase",
    "delta_schedule",
    "expand_schedule_config",
    "extrapolate",
    "gap_schedule",
    "invert_density",
    "kappa_tilde_beam",
    "kappas_slab",
    "local_density",
    "local_saturation_threshold",
    "phase_cli",
    "phase_from_schedule",
    "phi",
    "phi_digamma",
    "phi_inverse",
    "phi_series",
    "phi_tail",
    "rho_critical",
    "rho_of_delta",
    "rho_second_critical",
    "rho_second_critical_averaged",
    "schedule_from_config",
    "slab_kappa_limits",
    "solve_delta_finite",
]
