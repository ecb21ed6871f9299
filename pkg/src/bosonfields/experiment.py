"""
Plumbing shared by every subcommand: the common options, the output
directory, the log file, and turning errors into exit codes.

Exit codes:

*   0 = the run finished and every verdict passed
*   1 = an error (bad config, a value out of range, a solver that
        didn't converge)
*   2 = the run finished, but a statistical or asymptotic verdict failed

"""

from collections.abc import Callable, Iterator
import contextlib
import functools
import logging
import pathlib
import sys
import typing

import click
import pydantic

from bosonfields.errors import BosonFieldsException
from bosonfields.utils import configure_logging, remove_logging


logger = logging.getLogger(__name__)


VERDICT_FAILED = 2


P = typing.ParamSpec("P")
R = typing.TypeVar("R")


def experiment_options(func: Callable[P, R]) -> Callable[P, R]:
    """
    Add the ``--config``, ``--seed``, ``--out`` and ``--threads`` options
    to a subcommand.
    """

    @click.option(
        "--config",
        "config_path",
        help="Path to the JSON config for this run.",
        required=True,
        type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    )
    @click.option(
        "--seed",
        help="Root seed; overrides the seed in the config.",
        type=click.IntRange(min=0, max=2**64 - 1),
    )
    @click.option(
        "--out",
        "out_dir",
        help="Directory to write outputs to; created if it doesn't exist.",
        default="out",
        show_default=True,
        type=click.Path(file_okay=False, path_type=pathlib.Path),
    )
    @click.option(
        "--threads",
        help="Number of worker threads.",
        default=1,
        show_default=True,
        type=click.IntRange(min=1),
    )
    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        return func(*args, **kwargs)

    return wrapper


@contextlib.contextmanager
def experiment_run(out_dir: pathlib.Path, command: str) -> Iterator[None]:
    """
    Create the output directory and log into it for the length of
    the run.  Any error we know about becomes a one-line message and
    exit code 1.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    handler = configure_logging(out_dir)

    logger.info("Starting %s, writing to %s", command, out_dir)

    try:
        yield
    except pydantic.ValidationError as err:
        logger.error("Invalid config: %s", err)
        sys.exit(f"Invalid config: {err}")
    except BosonFieldsException as err:
        logger.error("%s failed: %s", command, err)
        sys.exit(f"{type(err).__name__}: {err}")
    else:
        logger.info("Finished %s", command)
    finally:
        remove_logging(handler)


def exit_with_verdict(passed: bool) -> None:
    """
    Exit with code 2 if a verdict failed.  Output files have already
    been written, so they can be inspected afterwards.
    """
    if not passed:
        click.echo("verdict: FAIL")
        sys.exit(VERDICT_FAILED)

    click.echo("verdict: PASS")
