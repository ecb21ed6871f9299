import pathlib
import typing

from click.testing import CliRunner
import pytest

from bosonfields.cli import main as cli_main
from bosonfields.geometry import ThermoParams
from bosonfields.thermo import rho_critical
from utils import output_bytes, read_csv, read_json, write_config


FINITE_CONFIG: dict[str, typing.Any] = {
    "profile": {"kind": "explicit", "L1": 2.0, "L2": 2.0, "L3": 2.0},
    "L": 1.0,
    "thermo": {"beta": 1.0},
    "rho": 0.5,
    "n_samples": 400,
    "seed": 11,
}


def run_sample(
    tmp_path: pathlib.Path, out_dir: pathlib.Path, config: dict[str, typing.Any], *args: str
) -> tuple[int, str]:
    config_path = write_config(tmp_path, config)

    runner = CliRunner()
    result = runner.invoke(
        cli_main, ["sample", "--config", str(config_path), "--out", str(out_dir), *args]
    )

    return result.exit_code, result.output


def test_samples_a_finite_box(tmp_path: pathlib.Path, out_dir: pathlib.Path) -> None:
    exit_code, output = run_sample(tmp_path, out_dir, FINITE_CONFIG)

    assert exit_code == 0, output
    assert "verdict: PASS" in output
    assert "chi-square:" in output

    summary = read_json(out_dir / "summary.json")
    assert summary["process"] == "finite"
    assert summary["n_samples"] == 400
    assert summary["kappa"] == 0.0

    # The gap is solved so the retained modes hold ρV particles.
    assert summary["expected_count"] == pytest.approx(0.5 * 8, rel=1e-8)
    assert summary["chi_square"]["passed"]
    assert len(summary["kernel"]["occupations"]) == 10

    lines = (out_dir / "configurations.jsonl").read_text().splitlines()
    assert len(lines) == 400
    assert len(read_csv(out_dir / "counts.csv")) == 400

    laplace = read_csv(out_dir / "laplace.csv")
    assert [row["fixture"] for row in laplace] == ["0", "1"]
    assert all(abs(float(row["z_score"])) <= 4 for row in laplace)

    effective = read_json(out_dir / "effective_config.json")
    assert effective["truncation"] == {"kind": "modes", "count": 10}
    assert effective["bc"] == "dirichlet"
    assert effective["seed"] == 11
    assert len(effective["test_functions"]) == 2


def test_samples_the_limit_process(tmp_path: pathlib.Path, out_dir: pathlib.Path) -> None:
    rho = 0.3
    config = {
        "profile": {"kind": "slab", "alpha": 1.0},
        "thermo": {"beta": 1.0},
        "rho": rho,
        "process": "limit",
        "window": {"lower": [0.0, 0.0, 0.0], "upper": [1.0, 1.0, 1.0]},
        "n_samples": 200,
        "seed": 5,
    }

    exit_code, output = run_sample(tmp_path, out_dir, config)

    assert exit_code == 0, output

    summary = read_json(out_dir / "summary.json")
    kappa = rho - rho_critical(ThermoParams(beta=1.0))
    assert summary["kappa"] == pytest.approx(kappa)
    assert summary["delta_inf"] == 0.0
    assert summary["expected_count"] == pytest.approx(rho)
    assert summary["chi_square"] is None

    assert read_json(out_dir / "effective_config.json")["kappa"] == pytest.approx(kappa)


def test_no_samples_skips_the_checks(tmp_path: pathlib.Path, out_dir: pathlib.Path) -> None:
    exit_code, output = run_sample(tmp_path, out_dir, {**FINITE_CONFIG, "n_samples": 0})

    assert exit_code == 0, output

    assert (out_dir / "configurations.jsonl").read_text() == ""
    assert read_csv(out_dir / "counts.csv") == []

    summary = read_json(out_dir / "summary.json")
    assert summary["mean_count"] is None
    assert summary["chi_square"] is None

    laplace = read_csv(out_dir / "laplace.csv")
    assert all(row["estimate"] == "" for row in laplace)


def test_same_seed_gives_the_same_output(tmp_path: pathlib.Path) -> None:
    config = {**FINITE_CONFIG, "n_samples": 300}

    run_sample(tmp_path, tmp_path / "first", config)
    run_sample(tmp_path, tmp_path / "second", config)

    assert output_bytes(tmp_path / "first") == output_bytes(tmp_path / "second")


def test_output_does_not_depend_on_threads(tmp_path: pathlib.Path) -> None:
    config = {**FINITE_CONFIG, "n_samples": 300}

    run_sample(tmp_path, tmp_path / "serial", config)
    run_sample(tmp_path, tmp_path / "parallel", config, "--threads", "3")

    assert output_bytes(tmp_path / "serial") == output_bytes(tmp_path / "parallel")


@pytest.mark.parametrize(
    ["changes", "removed", "message"],
    [
        pytest.param({}, "L", "needs the scale parameter 'L'", id="finite_without_L"),
        pytest.param({"process": "limit"}, "window", "needs a 'window'", id="limit_without_window"),
        pytest.param({}, "seed", "needs a seed", id="no_seed"),
        pytest.param(
            {"window": {"lower": [-2.0, -1.0, -1.0], "upper": [2.0, 1.0, 1.0]}},
            None,
            "is not inside the box",
            id="window_outside_box",
        ),
        pytest.param({"n_samples": -1}, None, "n_samples must be ≥ 0", id="negative_samples"),
    ],
)
def test_invalid_configs_are_errors(
    tmp_path: pathlib.Path,
    out_dir: pathlib.Path,
    changes: dict[str, typing.Any],
    removed: str | None,
    message: str,
) -> None:
    config = {**FINITE_CONFIG, **changes}
    if removed is not None:
        config.pop(removed, None)

    exit_code, output = run_sample(tmp_path, out_dir, config)

    assert exit_code == 1
    assert message in output
