"""
The expected scaled density at finite L, from exact mode sums.

The first moment of Tξ has density

    S:  the x₃-average of K_Λ(L₁y₁, L₂y₂, x₃)
    D:  K_Λ(Ly, Ly)
    R:  K_Λ(Ly, Ly)
    I:  K_Λ(x, x) on the axis x = (uL², 0, 0)

which we evaluate with the heat series, so no mode is enumerated and
no sampling is needed.  Comparing it with the limit profile on a grid
tells us how close we are at this L.
"""

from collections.abc import Iterator, Sequence
import concurrent.futures
from dataclasses import dataclass
import logging
import typing

import numpy as np

from bosonfields.errors import ConfigurationError
from bosonfields.geometry import (
    AnisotropyProfile,
    MeanAxis,
    PointAxis,
    ThermoParams,
    box_from_profile,
    diagonal_sum,
)
from bosonfields.geometry.heat_series import Axis
from bosonfields.thermo import GapSchedule
from .limit_fields import LimitRFSpec, limit_density_profile, limit_spec_for
from .transforms import Scale, ScalingTransform


logger = logging.getLogger(__name__)


NEGLIGIBLE_GAP = 1e-10


class DensityRow(typing.TypedDict):
    L: float
    coordinates: str
    finite: float
    limit: float
    gap: float


@dataclass(frozen=True)
class DensityTable:
    scale: Scale
    L: float
    grid: np.ndarray
    finite: np.ndarray
    limit: np.ndarray

    @property
    def gap(self) -> np.ndarray:
        return self.finite - self.limit  # type: ignore[no-any-return]

    @property
    def sup_gap(self) -> float:
        return float(np.max(np.abs(self.gap)))

    @property
    def relative_sup_gap(self) -> float:
        """
        The sup-gap as a fraction of the largest limit value.
        """
        return self.sup_gap / float(np.max(np.abs(self.limit)))

    def rows(self) -> Iterator[DensityRow]:
        for y, finite, limit in zip(self.grid, self.finite, self.limit):
            yield {
                "L": self.L,
                "coordinates": " ".join(f"{c:.6g}" for c in y),
                "finite": float(finite),
                "limit": float(limit),
                "gap": float(finite - limit),
            }


def _axes_at(transform: ScalingTransform, y: np.ndarray) -> tuple[Axis, ...]:
    L1, L2, L3 = transform.box.lengths
    L = transform.L

    if transform.scale == "S":
        return (PointAxis(L1, y[0] * L1), PointAxis(L2, y[1] * L2), MeanAxis(L3))
    elif transform.scale == "I":
        return (PointAxis(L1, y[0] * L**2), PointAxis(L2, 0.0), PointAxis(L3, 0.0))
    else:
        return (PointAxis(L1, y[0] * L), PointAxis(L2, y[1] * L), PointAxis(L3, y[2] * L))


def finite_L_scaled_density(
    profile: AnisotropyProfile,
    thermo: ThermoParams,
    delta_schedule: GapSchedule,
    L: float,
    scale: Scale,
    grid: np.ndarray,
    *,
    limit: LimitRFSpec | None = None,
    threads: int = 1,
) -> DensityTable:
    """
    Tabulate the expected scaled density at this L on a grid of points
    in the scale's region, next to the limit profile.
    """
    transform = ScalingTransform(scale=scale, L=L, profile=profile)

    points = np.asarray(grid, dtype=float).reshape(-1, transform.dimension)
    region = transform.region
    if not np.all(region.contains(points)):
        raise ConfigurationError(f"Grid points must lie in the {scale}-scale region {region.to_json()}")

    # Build the box first, so overflowing L gives a range error here.
    box_from_profile(profile, L)

    delta = delta_schedule.delta(L)

    def density_at(y: np.ndarray) -> float:
        return diagonal_sum(_axes_at(transform, y), thermo, delta)

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        finite = np.array(list(executor.map(density_at, points)))

    if limit is None:
        limit = limit_spec_for(profile, thermo, delta_schedule, scale)

    table = DensityTable(
        scale=scale,
        L=L,
        grid=points,
        finite=finite,
        limit=limit_density_profile(limit, points),
    )

    logger.info(
        "Scaled density at %s scale, L=%r, Δ=%r: sup-gap=%r", scale, L, delta, table.sup_gap
    )

    return table


@dataclass(frozen=True)
class ConvergenceReport:
    tables: list[DensityTable]

    @property
    def sup_gaps(self) -> list[float]:
        return [t.sup_gap for t in self.tables]

    @property
    def monotone(self) -> bool:
        """
        Whether the sup-gap shrinks with every step in L, ignoring gaps
        that are already at round-off level.
        """
        floor = NEGLIGIBLE_GAP * float(np.max(np.abs(self.tables[-1].limit)))
        gaps = self.sup_gaps
        return all(later < earlier or later <= floor for earlier, later in zip(gaps, gaps[1:]))

    @property
    def final_relative_gap(self) -> float:
        return self.tables[-1].relative_sup_gap

    def passed(self, tolerance: float) -> bool:
        return self.monotone and self.final_relative_gap <= tolerance

    def to_json(self) -> dict[str, typing.Any]:
        return {
            "L_sequence": [t.L for t in self.tables],
            "sup_gaps": self.sup_gaps,
            "relative_sup_gaps": [t.relative_sup_gap for t in self.tables],
            "monotone": self.monotone,
            "final_relative_gap": self.final_relative_gap,
        }


def convergence_study(
    profile: AnisotropyProfile,
    thermo: ThermoParams,
    delta_schedule: GapSchedule,
    scale: Scale,
    L_sequence: Sequence[float],
    grid: np.ndarray,
    *,
    threads: int = 1,
) -> ConvergenceReport:
    """
    Compare the finite-L density with its limit over a sequence of L,
    e.g. several doublings.
    """
    if len(L_sequence) < 2 or any(b <= a for a, b in zip(L_sequence, L_sequence[1:])):
        raise ConfigurationError(f"L_sequence must be increasing with ≥ 2 values, got {L_sequence!r}")

    limit = limit_spec_for(profile, thermo, delta_schedule, scale)

    return ConvergenceReport(
        tables=[
            finite_L_scaled_density(
                profile, thermo, delta_schedule, L, scale, grid, limit=limit, threads=threads
            )
            for L in L_sequence
        ]
    )


def line_grid(scale: Scale, points: int, *, margin: float = 0.0) -> np.ndarray:
    """
    Points on the segment through the origin along the direction in
    which the limit profile varies, at most ½ − margin from the origin.
    """
    t = np.linspace(-0.5 + margin, 0.5 - margin, points)
    zeros = np.zeros_like(t)

    if scale == "S":
        return np.column_stack([t, zeros])
    elif scale == "D":
        return np.column_stack([zeros, zeros, t])
    elif scale == "R":
        return np.column_stack([zeros, t, zeros])
    else:
        return t.reshape(-1, 1)
