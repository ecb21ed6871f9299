import pathlib
import typing

import click
import numpy as np

from bosonfields.config import (
    build_profile,
    build_thermo,
    check_density_or_schedule,
    expand_thermo,
    read_config,
    resolve_seed,
)
from bosonfields.errors import ConfigurationError
from bosonfields.experiment import exit_with_verdict, experiment_options, experiment_run
from bosonfields.sampling import agrees_with, jackknife_mean, z_score
from bosonfields.seeding import run_in_batches
from bosonfields.thermo import expand_schedule_config, gap_schedule, schedule_from_config
from bosonfields.types import ScaledConfig
from bosonfields.utils import write_csv, write_json
from .finite_l import convergence_study, line_grid
from .limit_fields import (
    FieldPairing,
    density_values,
    fixture_functions,
    limit_density_profile,
    limit_gf,
    limit_spec_for,
    sample_limit_density,
)


DEFAULT_L_SEQUENCE = [10.0, 20.0, 40.0]

DEFAULT_GRID_POINTS = 21

# The finite-L density has boundary layers of width ~λ_β/L at the
# walls, which the limit profile doesn't see.
GRID_MARGIN = 0.1

CONVERGENCE_TOLERANCE = 0.05

MIN_DRAWS = 100


def _coordinates(y: np.ndarray) -> str:
    return " ".join(f"{c:.6g}" for c in np.atleast_1d(y))


@click.command(
    short_help="Compare scaled densities with their limit fields",
    help="Compare the expected scaled density of a SLAB or BEAM gas at the S, D, R or I scale with the limit random field over a sequence of L, tabulate the limit generating functional, and optionally sample draws of the limit density.",
)
@experiment_options
def scaled(
    config_path: pathlib.Path, seed: int | None, out_dir: pathlib.Path, threads: int
) -> None:
    with experiment_run(out_dir, command="scaled"):
        config = read_config(config_path, model=ScaledConfig)
        check_density_or_schedule(config)

        profile = build_profile(config["profile"])
        thermo = build_thermo(config["thermo"])
        scale = config["scale"]
        L_sequence = config.get("L_sequence", DEFAULT_L_SEQUENCE)
        grid_points = config.get("grid_points", DEFAULT_GRID_POINTS)
        n_draws = config.get("n_draws", 0)

        if grid_points < 2:
            raise ConfigurationError(f"grid_points must be ≥ 2, got {grid_points}")
        if n_draws < 0:
            raise ConfigurationError(f"n_draws must be ≥ 0, got {n_draws}")

        effective: dict[str, typing.Any] = {
            "profile": config["profile"],
            "thermo": expand_thermo(config["thermo"]),
            "scale": scale,
            "L_sequence": L_sequence,
            "grid_points": grid_points,
            "n_draws": n_draws,
        }

        if "rho" in config:
            schedule = gap_schedule(profile, thermo, config["rho"])
            effective["rho"] = config["rho"]
        else:
            schedule = schedule_from_config(config["delta_schedule"])
            effective["delta_schedule"] = expand_schedule_config(config["delta_schedule"])

        spec = limit_spec_for(profile, thermo, schedule, scale)

        # Finite-L densities against the limit profile

        study = convergence_study(
            profile,
            thermo,
            schedule,
            scale,
            L_sequence,
            line_grid(scale, grid_points, margin=GRID_MARGIN),
            threads=threads,
        )

        write_csv(
            out_dir / "density_table.csv",
            fieldnames=["L", "coordinates", "finite", "limit", "gap"],
            rows=(row for table in study.tables for row in table.rows()),
        )

        passed = study.passed(CONVERGENCE_TOLERANCE)

        # The limit field itself

        draw_grid = line_grid(scale, grid_points)
        limit_profile = limit_density_profile(spec, draw_grid)

        write_csv(
            out_dir / "limit_density.csv",
            fieldnames=["coordinates", "limit"],
            rows=(
                {"coordinates": _coordinates(y), "limit": float(v)}
                for y, v in zip(draw_grid, limit_profile)
            ),
        )

        fixtures = fixture_functions(spec.dimension)
        pairings = [FieldPairing(spec=spec, f=f) for f in fixtures]

        gf_rows: list[dict[str, typing.Any]] = [
            {"fixture": i, "name": f.name, "limit_gf": limit_gf(spec, f)}
            for i, f in enumerate(fixtures)
        ]

        if n_draws > 0:
            root_seed = resolve_seed(config, seed)
            effective["seed"] = root_seed

            def draw_batch(
                rng: np.random.Generator, count: int
            ) -> list[tuple[np.ndarray, np.ndarray]]:
                densities = [sample_limit_density(spec, rng) for _ in range(count)]
                values = density_values(spec, densities, draw_grid)
                pairs = np.column_stack([p(densities) for p in pairings])
                return list(zip(values, pairs))

            draws = run_in_batches(
                draw_batch,
                n_draws,
                seed=root_seed,
                label="scaled/draws",
                threads=threads,
                progress=True,
            )

            values = np.stack([v for v, _ in draws])
            pairs = np.stack([p for _, p in draws])

            write_csv(
                out_dir / "density_draws.csv",
                fieldnames=["draw", "coordinates", "value"],
                rows=(
                    {"draw": i, "coordinates": _coordinates(y), "value": float(v)}
                    for i, row in enumerate(values)
                    for y, v in zip(draw_grid, row)
                ),
            )

            if n_draws >= MIN_DRAWS:
                mean_rows = []
                for j, y in enumerate(draw_grid):
                    mean, stderr = jackknife_mean(values[:, j])
                    expected = float(limit_profile[j])
                    mean_rows.append(
                        {
                            "coordinates": _coordinates(y),
                            "mean": mean,
                            "stderr": stderr,
                            "limit": expected,
                            "z_score": z_score(mean, expected, stderr),
                        }
                    )
                    passed = passed and agrees_with(mean, expected, stderr)

                write_csv(
                    out_dir / "density_mean.csv",
                    fieldnames=["coordinates", "mean", "stderr", "limit", "z_score"],
                    rows=mean_rows,
                )

                for i, (row, pairing) in enumerate(zip(gf_rows, pairings)):
                    estimate, stderr = jackknife_mean(np.exp(-pairs[:, i]))
                    sampled_law = pairing.closed_form()
                    row.update(
                        {
                            "sampled_law": sampled_law,
                            "estimate": estimate,
                            "stderr": stderr,
                            "z_score": z_score(estimate, sampled_law, stderr),
                        }
                    )
                    passed = passed and agrees_with(estimate, sampled_law, stderr)

        write_csv(
            out_dir / "limit_gf.csv",
            fieldnames=["fixture", "name", "limit_gf", "sampled_law", "estimate", "stderr", "z_score"],
            rows=gf_rows,
        )

        write_json(
            out_dir / "summary.json",
            {
                "scale": scale,
                "a": spec.a,
                "b": spec.b,
                "alpha_squared": (
                    spec.r_kernel.alpha_squared
                    if spec.r_kernel is not None and not spec.r_kernel.is_zero
                    else None
                ),
                "delta_schedule": schedule.describe(),
                "convergence": study.to_json(),
                "n_draws": n_draws,
                "passed": passed,
            },
        )
        write_json(out_dir / "effective_config.json", effective)

    gaps = ", ".join(f"L={t.L:g}: {t.relative_sup_gap:.3g}" for t in study.tables)
    click.echo(f"{scale} scale, relative sup-gap {gaps}")
    exit_with_verdict(passed)
