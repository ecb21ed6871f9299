import pathlib

from click.testing import CliRunner
import pytest

from bosonfields.cli import main as cli_main


def test_lists_every_subcommand() -> None:
    result = CliRunner().invoke(cli_main, ["--help"])

    assert result.exit_code == 0
    for name in ("phase", "sample", "scaled", "kac", "verify-asymptotics"):
        assert name in result.output


@pytest.mark.parametrize("command", ["phase", "sample", "scaled", "kac", "verify-asymptotics"])
def test_config_is_required(command: str) -> None:
    result = CliRunner().invoke(cli_main, [command])

    assert result.exit_code == 2
    assert "Missing option '--config'" in result.output


def test_config_must_exist() -> None:
    result = CliRunner().invoke(cli_main, ["phase", "--config", "does_not_exist.json"])

    assert result.exit_code == 2
    assert "does not exist" in result.output


def test_threads_must_be_positive(tmp_path: pathlib.Path) -> None:
    config_path = tmp_path / "config.json"
    config_path.write_text("{}")

    result = CliRunner().invoke(
        cli_main, ["phase", "--config", str(config_path), "--threads", "0"]
    )

    assert result.exit_code == 2
    assert "--threads" in result.output
