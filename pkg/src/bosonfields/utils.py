from collections.abc import Iterable, Mapping, Sequence
import csv
import json
import logging
import os
import pathlib
import typing


def write_json(path: pathlib.Path, data: typing.Any) -> None:
    """
    Write a JSON file with sorted keys, so identical data always
    produces identical bytes.
    """
    with open(path, "w") as out_file:
        out_file.write(json.dumps(data, indent=2, sort_keys=True))
        out_file.write("\n")


def write_jsonl(path: pathlib.Path, records: Iterable[typing.Any]) -> None:
    """
    Write one JSON object per line.  If there are no records, this
    creates an empty file.
    """
    with open(path, "w") as out_file:
        for r in records:
            out_file.write(json.dumps(r, sort_keys=True))
            out_file.write("\n")


def write_csv(
    path: pathlib.Path,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping[str, typing.Any]],
) -> None:
    """
    Write a CSV file.  The header is always written, even if there
    are no rows.
    """
    with open(path, "w", newline="") as out_file:
        writer = csv.DictWriter(out_file, fieldnames=list(fieldnames), lineterminator="\n")
        writer.writeheader()

        for r in rows:
            writer.writerow(r)


def configure_logging(out_dir: pathlib.Path) -> logging.Handler:
    """
    Send log messages from every ``bosonfields`` module to
    ``bosonfields.log`` in the output directory.

    Returns the handler, so the caller can remove it when it's done.
    """
    logger = logging.getLogger("bosonfields")
    logger.setLevel(level=logging.DEBUG)

    pid = os.getpid()

    handler = logging.FileHandler(filename=out_dir / "bosonfields.log", encoding="utf-8")
    handler.setFormatter(
        fmt=logging.Formatter(f"%(asctime)s - {pid} - %(levelname)s - %(message)s")
    )

    logger.addHandler(handler)

    return handler


def remove_logging(handler: logging.Handler) -> None:
    logging.getLogger("bosonfields").removeHandler(handler)
    handler.close()
