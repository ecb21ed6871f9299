import pathlib
import typing

import click

from bosonfields.config import (
    build_profile,
    build_thermo,
    check_density_or_schedule,
    expand_thermo,
    read_config,
)
from bosonfields.experiment import experiment_options, experiment_run
from bosonfields.types import PhaseConfig
from bosonfields.utils import write_json
from .phases import PhaseReport, classify_phase, phase_from_schedule
from .schedules import expand_schedule_config, schedule_from_config


DEFAULT_L_SEQUENCE = [10.0, 20.0, 40.0, 80.0]


@click.command(
    short_help="Classify the phase of a SLAB or BEAM gas",
    help="Work out the gBEC phase, the critical densities and the limit densities κ1, κ2, κ̃ for a SLAB or BEAM gas, given either a density or a gap schedule.",
)
@experiment_options
def phase(
    config_path: pathlib.Path, seed: int | None, out_dir: pathlib.Path, threads: int
) -> None:
    with experiment_run(out_dir, command="phase"):
        config = read_config(config_path, model=PhaseConfig)
        check_density_or_schedule(config)

        profile = build_profile(config["profile"])
        thermo = build_thermo(config["thermo"])

        effective: dict[str, typing.Any] = {
            "profile": config["profile"],
            "thermo": expand_thermo(config["thermo"]),
        }

        report: PhaseReport

        if "rho" in config:
            report = classify_phase(profile, thermo, config["rho"])
            effective["rho"] = config["rho"]
        else:
            L_sequence = config.get("L_sequence", DEFAULT_L_SEQUENCE)
            report = phase_from_schedule(
                profile, thermo, schedule_from_config(config["delta_schedule"]), L_sequence
            )
            effective["delta_schedule"] = expand_schedule_config(config["delta_schedule"])
            effective["L_sequence"] = L_sequence

        if seed is not None or "seed" in config:
            effective["seed"] = seed if seed is not None else config["seed"]

        write_json(out_dir / "phase_report.json", report.to_json())
        write_json(out_dir / "effective_config.json", effective)

    click.echo(report.summary())
