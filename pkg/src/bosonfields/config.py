"""
Reading experiment configs, and turning them into domain objects.

A config is a JSON file.  We validate its shape with pydantic (through
``nitrate.types.validate_type``), then check the rules that a TypedDict
can't express, e.g. that exactly one of ``rho`` and ``delta_schedule``
is present.
"""

import json
import pathlib
import typing

from nitrate.types import validate_type
import numpy as np

from bosonfields.errors import ConfigurationError
from bosonfields.geometry import (
    AnisotropyProfile,
    BeamProfile,
    EnergyCutoff,
    ExplicitProfile,
    ModeCount,
    SlabProfile,
    TestFunction,
    ThermoParams,
    Truncation,
    Window,
    constant_function,
    gaussian_bump,
)
from bosonfields.types import (
    LaplaceFunctionConfig,
    ProfileConfig,
    ThermoConfig,
    TruncationConfig,
    WindowConfig,
)


T = typing.TypeVar("T")


def read_config(path: pathlib.Path, *, model: type[T]) -> T:
    """
    Read a JSON config file and check it matches ``model``.

    This throws a ``pydantic.ValidationError`` naming the bad fields
    if it doesn't.
    """
    with open(path) as in_file:
        data = json.load(in_file)

    return validate_type(data, model=model)


def check_density_or_schedule(config: typing.Mapping[str, typing.Any]) -> None:
    """
    Exactly one of ``rho`` and ``delta_schedule`` must be given.
    """
    has_rho = "rho" in config
    has_schedule = "delta_schedule" in config

    if has_rho == has_schedule:
        raise ConfigurationError(
            "Config must have exactly one of 'rho' and 'delta_schedule', "
            f"got {'both' if has_rho else 'neither'}"
        )


def resolve_seed(config: typing.Mapping[str, typing.Any], seed: int | None) -> int:
    """
    The root seed for a stochastic run: ``--seed`` wins over the config.
    """
    if seed is not None:
        resolved = seed
    elif "seed" in config:
        resolved = config["seed"]
    else:
        raise ConfigurationError("This run is stochastic, so it needs a seed (in the config or --seed)")

    if not (0 <= resolved < 2**64):
        raise ConfigurationError(f"Seed must be a 64-bit unsigned integer, got {resolved!r}")

    return int(resolved)


def build_thermo(config: ThermoConfig) -> ThermoParams:
    return ThermoParams(
        beta=config["beta"],
        hbar=config.get("hbar", 1.0),
        mass=config.get("mass", 1.0),
    )


def expand_thermo(config: ThermoConfig) -> ThermoConfig:
    return {
        "beta": config["beta"],
        "hbar": config.get("hbar", 1.0),
        "mass": config.get("mass", 1.0),
    }


def build_profile(config: ProfileConfig) -> AnisotropyProfile:
    if config["kind"] == "slab":
        return SlabProfile(alpha=config["alpha"])
    elif config["kind"] == "beam":
        return BeamProfile(gamma=config["gamma"])
    else:
        return ExplicitProfile(L1=config["L1"], L2=config["L2"], L3=config["L3"])


def build_truncation(config: TruncationConfig) -> Truncation:
    if config["kind"] == "energy":
        return EnergyCutoff(energy=config["energy"])
    else:
        return ModeCount(count=config["count"])


def build_window(config: WindowConfig) -> Window:
    if len(config["lower"]) != 3 or len(config["upper"]) != 3:
        raise ConfigurationError("Sampling windows must be three-dimensional")

    return Window(lower=tuple(config["lower"]), upper=tuple(config["upper"]))


def build_test_function(config: LaplaceFunctionConfig, window: Window) -> TestFunction:
    if config["kind"] == "constant":
        return constant_function(config["value"], window)
    else:
        centre = np.asarray(config["center"], dtype=float)
        if centre.shape != (window.dimension,):
            raise ConfigurationError(
                f"Bump centre must have {window.dimension} coordinates, got {config['center']!r}"
            )
        return gaussian_bump(config["height"], centre, config["width"], window)
