from collections.abc import Callable
from dataclasses import dataclass
import pathlib
import typing

import click
import numpy as np

from bosonfields.config import (
    build_profile,
    build_test_function,
    build_thermo,
    build_truncation,
    build_window,
    check_density_or_schedule,
    expand_thermo,
    read_config,
    resolve_seed,
)
from bosonfields.errors import ConfigurationError
from bosonfields.experiment import exit_with_verdict, experiment_options, experiment_run
from bosonfields.geometry import (
    TestFunction,
    ThermoParams,
    Window,
    box_from_profile,
    build_kernel,
    kernel_diagonal,
)
from bosonfields.geometry.regions import tensor_gauss_legendre
from bosonfields.seeding import run_in_batches
from bosonfields.thermo import (
    expand_schedule_config,
    invert_density,
    rho_critical,
    rho_of_delta,
    schedule_from_config,
    solve_delta_finite,
)
from bosonfields.types import (
    ChiSquareVerdict,
    LaplaceFunctionConfig,
    SampleConfig,
    TruncationConfig,
    WindowConfig,
)
from bosonfields.utils import write_csv, write_json, write_jsonl
from .condensate import CondensateProfile, FlatProfile, GroundStateProfile
from .count_law import count_law
from .cox import PointConfiguration, sample_configuration
from .estimators import (
    MIN_LAPLACE_SAMPLES,
    Z_SCORE_LIMIT,
    agrees_with,
    chi_square_counts,
    jackknife_mean,
    laplace_from_configurations,
    z_score,
)
from .fredholm import laplace_closed
from .limit_process import embed_limit_kernel


DEFAULT_TRUNCATION: TruncationConfig = {"kind": "modes", "count": 10}


@dataclass
class SamplerSetup:
    sample: Callable[[np.random.Generator], PointConfiguration]
    laplace_closed: Callable[[TestFunction], float]
    window: Window
    kappa: float
    expected_count: float
    count_pmf: np.ndarray | None
    description: dict[str, typing.Any]


def _default_test_functions(window: Window) -> list[LaplaceFunctionConfig]:
    return [
        {"kind": "constant", "value": 1.0 / window.volume},
        {
            "kind": "gaussian_bump",
            "height": 1.0,
            "center": [float(c) for c in window.centre],
            "width": float(np.min(window.sides)) / 6,
        },
    ]


def _window_config(window: Window) -> WindowConfig:
    return {"lower": list(window.lower), "upper": list(window.upper)}


def _condensate_profile(
    name: str, kernel_bc: str, ground: GroundStateProfile
) -> CondensateProfile:
    if name == "ground" and kernel_bc == "dirichlet":
        return ground
    else:
        return FlatProfile()


def setup_finite(
    config: SampleConfig, thermo: ThermoParams, effective: dict[str, typing.Any]
) -> SamplerSetup:
    if "L" not in config:
        raise ConfigurationError("Sampling a finite box needs the scale parameter 'L'")

    L = config["L"]
    box = box_from_profile(build_profile(config["profile"]), L)

    truncation_config = config.get("truncation", DEFAULT_TRUNCATION)
    truncation = build_truncation(truncation_config)
    bc = config.get("bc", "dirichlet")

    if "rho" in config:
        delta = solve_delta_finite(box, thermo, config["rho"], truncation=truncation, bc=bc)
    else:
        delta = schedule_from_config(config["delta_schedule"]).delta(L)

    kernel = build_kernel(box, thermo, delta, truncation, bc)

    window = build_window(config["window"]) if "window" in config else Window.from_box(box)
    if not window.is_inside(box):
        raise ConfigurationError(f"Window {window.to_json()} is not inside the box {box.lengths}")

    kappa = config.get("kappa", 0.0)
    condensate = config.get("condensate", "ground")
    u0 = _condensate_profile(condensate, bc, GroundStateProfile(box))

    nodes, weights = tensor_gauss_legendre(window, 16)
    expected_count = float(
        np.sum(weights * (kernel_diagonal(kernel, nodes) + kappa * np.abs(u0(nodes)) ** 2))
    )

    full_box = window == Window.from_box(box)

    effective.update(
        {
            "L": L,
            "bc": bc,
            "truncation": truncation_config,
            "kappa": kappa,
            "condensate": condensate,
            "window": _window_config(window),
        }
    )

    return SamplerSetup(
        sample=lambda rng: sample_configuration(kernel, kappa, window, rng, profile=u0),
        laplace_closed=lambda f: laplace_closed(kernel, f, kappa, profile=u0),
        window=window,
        kappa=kappa,
        expected_count=expected_count,
        count_pmf=count_law(kernel) if full_box and kappa == 0 else None,
        description={"delta": delta, "kernel": kernel.to_json()},
    )


def setup_limit(
    config: SampleConfig, thermo: ThermoParams, effective: dict[str, typing.Any]
) -> SamplerSetup:
    if "window" not in config:
        raise ConfigurationError("Sampling the limit process needs a 'window'")

    window = build_window(config["window"])

    if "rho" in config:
        rho = config["rho"]
        rho_c = rho_critical(thermo)
        if rho <= rho_c:
            delta_inf = invert_density(thermo, rho)
            kappa = config.get("kappa", 0.0)
        else:
            delta_inf = 0.0
            kappa = config.get("kappa", rho - rho_c)
    else:
        delta_inf = schedule_from_config(config["delta_schedule"]).delta_inf
        kappa = config.get("kappa", 0.0)

    embedding = embed_limit_kernel(thermo, delta_inf, window)

    effective.update({"kappa": kappa, "window": _window_config(window)})

    return SamplerSetup(
        sample=lambda rng: embedding.sample(kappa, rng),
        laplace_closed=lambda f: embedding.laplace_closed(f, kappa),
        window=window,
        kappa=kappa,
        expected_count=(rho_of_delta(thermo, delta_inf) + kappa) * window.volume,
        count_pmf=None,
        description={
            "delta_inf": delta_inf,
            "embedding_side": embedding.kernel.box.L1,
            "embedding_modes": embedding.kernel.rank,
            "zero_mode_occupation": embedding.zero_mode_occupation,
        },
    )


@click.command(
    short_help="Sample boson point configurations",
    help="Sample configurations of the boson point process in a finite box, or of its infinite-volume limit, and compare counts and Laplace functionals against closed forms.",
)
@experiment_options
def sample(
    config_path: pathlib.Path, seed: int | None, out_dir: pathlib.Path, threads: int
) -> None:
    with experiment_run(out_dir, command="sample"):
        config = read_config(config_path, model=SampleConfig)
        check_density_or_schedule(config)

        root_seed = resolve_seed(config, seed)
        thermo = build_thermo(config["thermo"])
        process = config.get("process", "finite")
        n_samples = config["n_samples"]

        if n_samples < 0:
            raise ConfigurationError(f"n_samples must be ≥ 0, got {n_samples}")

        effective: dict[str, typing.Any] = {
            "profile": config["profile"],
            "thermo": expand_thermo(config["thermo"]),
            "process": process,
            "n_samples": n_samples,
            "seed": root_seed,
        }
        if "rho" in config:
            effective["rho"] = config["rho"]
        else:
            effective["delta_schedule"] = expand_schedule_config(config["delta_schedule"])

        if process == "finite":
            setup = setup_finite(config, thermo, effective)
        else:
            setup = setup_limit(config, thermo, effective)

        test_function_configs = config.get(
            "test_functions", _default_test_functions(setup.window)
        )
        effective["test_functions"] = test_function_configs
        test_functions = [build_test_function(c, setup.window) for c in test_function_configs]

        configurations: list[PointConfiguration] = run_in_batches(
            lambda rng, count: [setup.sample(rng) for _ in range(count)],
            n_samples,
            seed=root_seed,
            label="sample/configurations",
            threads=threads,
            progress=True,
        )

        write_jsonl(
            out_dir / "configurations.jsonl",
            (c.to_json(i) for i, c in enumerate(configurations)),
        )

        counts = [c.count for c in configurations]
        write_csv(
            out_dir / "counts.csv",
            fieldnames=["index", "count"],
            rows=({"index": i, "count": n} for i, n in enumerate(counts)),
        )

        enough_samples = n_samples >= MIN_LAPLACE_SAMPLES
        passed = True

        laplace_rows = []
        for i, f in enumerate(test_functions):
            row: dict[str, typing.Any] = {
                "fixture": i,
                "name": f.name,
                "closed": setup.laplace_closed(f),
            }

            if enough_samples:
                estimate, stderr = laplace_from_configurations(configurations, f)
                row["estimate"] = estimate
                row["stderr"] = stderr

                row["z_score"] = z_score(estimate, row["closed"], stderr)
                passed = passed and agrees_with(estimate, row["closed"], stderr)

            laplace_rows.append(row)

        write_csv(
            out_dir / "laplace.csv",
            fieldnames=["fixture", "name", "closed", "estimate", "stderr", "z_score"],
            rows=laplace_rows,
        )

        chi_square: ChiSquareVerdict | None = None
        if setup.count_pmf is not None and n_samples > 0:
            chi_square = chi_square_counts(counts, setup.count_pmf)
            passed = passed and chi_square["passed"]

        mean_count: float | None = None
        count_stderr: float | None = None
        if n_samples >= 2:
            mean_count, count_stderr = jackknife_mean(np.array(counts, dtype=float))

            if enough_samples and count_stderr > 0:
                passed = passed and abs(mean_count - setup.expected_count) <= Z_SCORE_LIMIT * count_stderr

        write_json(
            out_dir / "summary.json",
            {
                "process": process,
                "n_samples": n_samples,
                "kappa": setup.kappa,
                "window": setup.window.to_json(),
                "expected_count": setup.expected_count,
                "mean_count": mean_count,
                "count_stderr": count_stderr,
                "chi_square": chi_square,
                "passed": passed,
                **setup.description,
            },
        )
        write_json(out_dir / "effective_config.json", effective)

    click.echo(f"samples: {n_samples}, expected count: {setup.expected_count:.6g}")
    if chi_square is not None:
        click.echo(
            f"chi-square: statistic={chi_square['statistic']:.4g}, "
            f"dof={chi_square['degrees_of_freedom']}, "
            f"0.99 quantile={chi_square['quantile_99']:.4g}, "
            f"passed={chi_square['passed']}"
        )
    exit_with_verdict(passed)
