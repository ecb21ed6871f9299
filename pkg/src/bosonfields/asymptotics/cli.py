import pathlib
import typing

import click

from bosonfields.config import read_config
from bosonfields.experiment import exit_with_verdict, experiment_options, experiment_run
from bosonfields.types import AsymptoticsConfig
from bosonfields.utils import write_csv, write_json
from .cases import AsymptoticCase, case_from_config, standard_cases
from .harness import residual_report


def case_filename(index: int, case: AsymptoticCase) -> str:
    return f"{index:02d}_{case.formula}.csv"


@click.command(
    short_help="Check the lattice-sum asymptotics",
    help="Sum each lattice formula on a grid of box sizes, subtract its predicted leading term, and check that what's left is bounded or stays inside its envelope.  Without any cases in the config, runs every formula under the standard schedules.",
)
@experiment_options
def verify_asymptotics(
    config_path: pathlib.Path, seed: int | None, out_dir: pathlib.Path, threads: int
) -> None:
    with experiment_run(out_dir, command="verify-asymptotics"):
        config = read_config(config_path, model=AsymptoticsConfig)

        if "cases" in config:
            cases = [case_from_config(c) for c in config["cases"]]
        else:
            cases = standard_cases()

        effective: dict[str, typing.Any] = {"cases": [c.to_config() for c in cases]}

        # Nothing here is random, but we keep the seed so the effective
        # config looks like every other subcommand's.
        if seed is not None or "seed" in config:
            effective["seed"] = seed if seed is not None else config["seed"]

        verdicts = []

        for i, case in enumerate(cases):
            report = residual_report(case, threads=threads)

            write_csv(
                out_dir / case_filename(i, case),
                fieldnames=["L", "lhs", "leading", "residual"],
                rows=report.rows,
            )

            verdicts.append(report.verdict)

        passed = all(v["passed"] for v in verdicts)

        write_json(out_dir / "asymptotics_summary.json", {"verdicts": verdicts, "passed": passed})
        write_json(out_dir / "effective_config.json", effective)

    for v in verdicts:
        status = "ok" if v["passed"] else "FAIL"
        click.echo(f"{v['formula']:<4} {v['schedule']:<28} {v['kind']:<10} {status}")

    exit_with_verdict(passed)
