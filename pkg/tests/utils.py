import csv
import json
import pathlib
import typing


def write_config(tmp_path: pathlib.Path, config: dict[str, typing.Any]) -> pathlib.Path:
    """
    Write a config dict to a JSON file and return its path.
    """
    path = tmp_path / "config.json"

    with open(path, "w") as out_file:
        json.dump(config, out_file)

    return path


def read_json(path: pathlib.Path) -> typing.Any:
    with open(path) as in_file:
        return json.load(in_file)


def read_csv(path: pathlib.Path) -> list[dict[str, str]]:
    """
    Read a CSV file written by one of the subcommands.
    """
    with open(path, newline="") as in_file:
        return list(csv.DictReader(in_file))


def output_bytes(out_dir: pathlib.Path) -> dict[str, bytes]:
    """
    The contents of every output file, except the log, which has
    timestamps in it.
    """
    return {
        p.name: p.read_bytes()
        for p in sorted(out_dir.iterdir())
        if p.name != "bosonfields.log"
    }
