import math
import pathlib
import typing

import click
import numpy as np

from bosonfields.config import build_thermo, expand_thermo, read_config, resolve_seed
from bosonfields.experiment import exit_with_verdict, experiment_options, experiment_run
from bosonfields.sampling import agrees_with, z_score
from bosonfields.seeding import run_in_batches
from bosonfields.thermo import rho_critical
from bosonfields.types import KacConfig
from bosonfields.utils import write_csv, write_json
from .distributions import (
    AtomKac,
    convolution_grid,
    empirical_laplace,
    factorised_laplace,
    infinite_divisibility_probe,
    kac_convolve_check,
    kac_kernel,
    kac_laplace,
)


DEFAULT_T_GRID = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0]

# The convolution gap on ``convolution_grid`` is at most about 5e-7.
CONVOLUTION_TOLERANCE = 1e-6


@click.command(
    short_help="Tabulate the Kac distribution",
    help="Tabulate the Laplace transform of the Kac distribution at a given density, check the convolution identity and infinite divisibility, and optionally compare against samples.",
)
@experiment_options
def kac(
    config_path: pathlib.Path, seed: int | None, out_dir: pathlib.Path, threads: int
) -> None:
    with experiment_run(out_dir, command="kac"):
        config = read_config(config_path, model=KacConfig)

        thermo = build_thermo(config["thermo"])
        rho = config["rho"]
        t_grid = config.get("t_grid", DEFAULT_T_GRID)
        n_samples = config.get("n_samples", 0)
        divisibility_n = config.get("divisibility_n", 2)

        effective: dict[str, typing.Any] = {
            "thermo": expand_thermo(config["thermo"]),
            "rho": rho,
            "t_grid": t_grid,
            "n_samples": n_samples,
            "divisibility_n": divisibility_n,
        }

        dist = kac_kernel(thermo, rho)
        laplace = kac_laplace(thermo, rho, t_grid)

        if n_samples > 0:
            root_seed = resolve_seed(config, seed)
            effective["seed"] = root_seed

            samples = np.array(
                run_in_batches(
                    lambda rng, count: list(dist.sample(rng, count)),
                    n_samples,
                    seed=root_seed,
                    label="kac/samples",
                    threads=threads,
                    progress=True,
                )
            )
        else:
            samples = np.array([])

        laplace_rows = []
        laplace_passed = True

        for t, value in zip(t_grid, laplace):
            row: dict[str, typing.Any] = {"t": t, "laplace": float(value)}

            if not isinstance(dist, AtomKac):
                row["factorised"] = float(factorised_laplace(thermo, rho, t))

            if n_samples > 0:
                mean, stderr = empirical_laplace(samples, t)
                row["empirical"] = mean
                row["stderr"] = stderr

                if not math.isnan(stderr):
                    row["z_score"] = z_score(mean, float(value), stderr)
                    laplace_passed = laplace_passed and agrees_with(mean, float(value), stderr)

            laplace_rows.append(row)

        write_csv(
            out_dir / "kac_laplace.csv",
            fieldnames=["t", "laplace", "factorised", "empirical", "stderr", "z_score"],
            rows=laplace_rows,
        )
        write_csv(
            out_dir / "kac_samples.csv",
            fieldnames=["index", "density"],
            rows=({"index": i, "density": float(x)} for i, x in enumerate(samples)),
        )

        divisibility = infinite_divisibility_probe(thermo, rho, divisibility_n, t_grid)
        write_csv(
            out_dir / "kac_divisibility.csv",
            fieldnames=["t", "value", "worst_order", "worst_signed_difference", "passed"],
            rows=divisibility.rows,
        )

        if isinstance(dist, AtomKac):
            convolution_gap = None
            distribution = {"kind": "atom", "rho": dist.rho}
        else:
            convolution_gap = kac_convolve_check(thermo, rho, convolution_grid(thermo, rho))
            distribution = {"kind": "shifted_exponential", "shift": dist.shift, "scale": dist.scale}

        passed = (
            laplace_passed
            and divisibility.passed
            and (convolution_gap is None or convolution_gap <= CONVOLUTION_TOLERANCE)
        )

        write_json(
            out_dir / "kac_report.json",
            {
                "distribution": distribution,
                "rho_c": rho_critical(thermo),
                "convolution_gap": convolution_gap,
                "divisibility_passed": divisibility.passed,
                "laplace_passed": laplace_passed,
                "passed": passed,
            },
        )
        write_json(out_dir / "effective_config.json", effective)

    click.echo(f"distribution: {distribution['kind']}")
    exit_with_verdict(passed)
