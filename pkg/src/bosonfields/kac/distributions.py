"""
Kac distributions: the law of the particle density that mixes
canonical states into the grand-canonical one.

Below (or at) the critical density ρ_c the distribution is a point mass
at ρ.  Above it, the density is ρ_c plus an exponential variable with
mean ρ − ρ_c, i.e. the convolution of an atom at ρ_c with the
"condensate" factor Exp(ρ − ρ_c).

"""

from collections.abc import Sequence
from dataclasses import dataclass
import logging
import math
import typing

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bosonfields.errors import DomainError
from bosonfields.geometry import ThermoParams
from bosonfields.quadrature import quad
from bosonfields.thermo import rho_critical


logger = logging.getLogger(__name__)


FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class AtomKac:
    rho: float

    def laplace(self, t: ArrayLike) -> FloatArray:
        return np.exp(-np.asarray(t, dtype=float) * self.rho)

    def cdf(self, x: ArrayLike) -> FloatArray:
        return (np.asarray(x, dtype=float) >= self.rho).astype(float)

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        return np.full(size, self.rho)

    @property
    def mean(self) -> float:
        return self.rho

    def total_mass(self) -> float:
        return 1.0


@dataclass(frozen=True)
class ShiftedExponentialKac:
    """
    The law of ``shift + scale · E``, where E ~ Exp(1).
    """

    shift: float
    scale: float

    def __post_init__(self) -> None:
        if not (self.scale > 0):
            raise DomainError(f"Exponential scale must be positive, got {self.scale!r}")

    def laplace(self, t: ArrayLike) -> FloatArray:
        t = np.asarray(t, dtype=float)
        return np.exp(-t * self.shift) / (1 + t * self.scale)

    def density(self, x: ArrayLike) -> FloatArray:
        x = np.asarray(x, dtype=float)
        offset = np.maximum(x - self.shift, 0)
        return np.where(x >= self.shift, np.exp(-offset / self.scale) / self.scale, 0.0)

    def cdf(self, x: ArrayLike) -> FloatArray:
        x = np.asarray(x, dtype=float)
        return -np.expm1(-np.maximum(x - self.shift, 0) / self.scale)

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        # 1 − U lies in (0, 1], so the log is always finite
        u = 1.0 - rng.random(size)
        return self.shift - self.scale * np.log(u)

    @property
    def mean(self) -> float:
        return self.shift + self.scale

    def total_mass(self) -> float:
        """
        ∫ density, computed numerically.
        """
        return quad(lambda x: float(self.density(x)), self.shift, math.inf)


KacDistribution = AtomKac | ShiftedExponentialKac


def kac_kernel(thermo: ThermoParams, rho: float) -> KacDistribution:
    """
    The Kac distribution at density ρ.  The atom wins at ρ = ρ_c.
    """
    if not (rho > 0):
        raise DomainError(f"Density must be positive, got {rho!r}")

    rho_c = rho_critical(thermo)

    if rho <= rho_c:
        return AtomKac(rho=rho)
    else:
        return ShiftedExponentialKac(shift=rho_c, scale=rho - rho_c)


def condensate_factor(thermo: ThermoParams, rho: float) -> ShiftedExponentialKac:
    """
    The exponential factor Exp(ρ − ρ_c), which convolved with the atom at
    ρ_c gives the Kac distribution above ρ_c.
    """
    rho_c = rho_critical(thermo)

    if not (rho > rho_c):
        raise DomainError(f"The condensate factor needs ρ > ρ_c = {rho_c}, got {rho!r}")

    return ShiftedExponentialKac(shift=0.0, scale=rho - rho_c)


def kac_laplace(thermo: ThermoParams, rho: float, t: ArrayLike) -> FloatArray:
    t = np.asarray(t, dtype=float)

    if np.any(t < 0):
        raise DomainError(f"Laplace variable must be ≥ 0, got {t!r}")

    return kac_kernel(thermo, rho).laplace(t)


def kac_sample(
    dist: KacDistribution, rng: np.random.Generator, size: int = 1
) -> FloatArray:
    return dist.sample(rng, size)


def convolution_grid(thermo: ThermoParams, rho: float, points: int = 20_001) -> FloatArray:
    """
    An equally spaced grid of densities for ``kac_convolve_check``,
    running from 10 condensate scales below ρ_c (or 0) to 30 above ρ.
    """
    rho_c = rho_critical(thermo)
    scale = rho - rho_c
    return np.linspace(max(0.0, rho_c - 10 * scale), rho + 30 * scale, points)


def kac_convolve_check(thermo: ThermoParams, rho: float, grid: Sequence[float] | FloatArray) -> float:
    """
    Convolve the atom at ρ_c with the condensate factor on an equally
    spaced grid of densities, and return the sup distance between the
    CDF of the result and the CDF of the Kac distribution at the nodes.

    ρ_c needn't be a node: its unit mass is split between the nodes
    either side of it, in proportion to how close it is to each.  The
    factor is represented by its mass on each cell, integrated from its
    density with Simpson's rule.  With spacing h the gap is at most
    about h²/8(ρ − ρ_c)².
    """
    rho_c = rho_critical(thermo)

    if not (rho > rho_c):
        raise DomainError(f"The convolution identity needs ρ > ρ_c = {rho_c}, got {rho!r}")

    nodes = np.asarray(grid, dtype=float)
    if nodes.ndim != 1 or len(nodes) < 2:
        raise DomainError("Convolution grid must be a 1D list of at least two densities")

    spacing = np.diff(nodes)
    h = float(spacing[0])
    if not (h > 0) or not np.allclose(spacing, h, rtol=1e-9, atol=0):
        raise DomainError("Convolution grid must be increasing and equally spaced")

    if not (nodes[0] <= rho_c < nodes[-1]):
        raise DomainError(
            f"Convolution grid [{nodes[0]}, {nodes[-1]}] must contain ρ_c = {rho_c}"
        )

    k = min(int((rho_c - nodes[0]) // h), len(nodes) - 2)
    theta = (rho_c - nodes[k]) / h

    atom_masses = np.zeros(len(nodes))
    atom_masses[k] = 1 - theta
    atom_masses[k + 1] = theta

    factor = condensate_factor(thermo, rho)
    lower = np.arange(len(nodes) - 1) * h
    factor_masses = (
        h
        / 6
        * (factor.density(lower) + 4 * factor.density(lower + h / 2) + factor.density(lower + h))
    )

    # The mass at node k carries cell j of the factor onto cell k + j.
    convolved = np.convolve(atom_masses, factor_masses)[: len(nodes) - 1]
    convolved_cdf = np.concatenate([[0.0], np.cumsum(convolved)])

    expected_cdf = kac_kernel(thermo, rho).cdf(nodes)

    gap = float(np.max(np.abs(convolved_cdf - expected_cdf)))
    logger.debug(
        "Kac convolution gap on %d cells (ρ_c at node %d + %.3f): %g",
        len(nodes) - 1,
        k,
        theta,
        gap,
    )
    return gap


def factorised_laplace(thermo: ThermoParams, rho: float, t: ArrayLike) -> FloatArray:
    """
    The Laplace transform of the Kac distribution as a product of the
    transforms of its two factors.
    """
    atom = AtomKac(rho=rho_critical(thermo))
    return atom.laplace(t) * condensate_factor(thermo, rho).laplace(t)


class DivisibilityRow(typing.TypedDict):
    t: float
    value: float
    worst_order: int
    worst_signed_difference: float
    passed: bool


@dataclass(frozen=True)
class DivisibilityReport:
    n: int
    rows: list[DivisibilityRow]

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.rows)


def infinite_divisibility_probe(
    thermo: ThermoParams,
    rho: float,
    n: int,
    t_grid: Sequence[float] | FloatArray,
    *,
    step: float = 0.05,
    max_order: int = 4,
) -> DivisibilityReport:
    """
    Check that t ↦ L(t)^{1/n} looks completely monotone at each t, where L
    is the Kac Laplace transform: the k-th forward difference must have
    sign (−1)^k for k = 0..max_order.

    This is a spot check, not a proof.
    """
    if n < 2:
        raise DomainError(f"Divisibility probe needs n ≥ 2, got {n!r}")

    dist = kac_kernel(thermo, rho)
    ts = np.asarray(t_grid, dtype=float)

    if np.any(ts < 0):
        raise DomainError("Divisibility probe needs t ≥ 0")

    # values[i, j] = L(t_i + j·h)^{1/n}
    shifts = ts[:, None] + step * np.arange(max_order + 1)[None, :]
    values = dist.laplace(shifts) ** (1 / n)

    rows: list[DivisibilityRow] = []

    for t, row in zip(ts, values):
        tolerance = 64 * np.finfo(float).eps * max(1.0, float(np.max(row)))

        worst_order = 0
        worst = float(row[0])
        differences = row

        for order in range(max_order + 1):
            signed = (-1) ** order * float(differences[0])
            if signed < worst:
                worst, worst_order = signed, order
            differences = np.diff(differences)

        rows.append(
            {
                "t": float(t),
                "value": float(row[0]),
                "worst_order": worst_order,
                "worst_signed_difference": worst,
                "passed": worst >= -tolerance,
            }
        )

    report = DivisibilityReport(n=n, rows=rows)

    if not report.passed:
        logger.warning(
            "Divisibility probe failed at t=%s",
            [r["t"] for r in rows if not r["passed"]],
        )

    return report


def empirical_laplace(samples: FloatArray, t: float) -> tuple[float, float]:
    """
    The sample mean of e^{−tX} and its standard error.
    """
    if len(samples) == 0:
        return math.nan, math.nan

    values = np.exp(-t * samples)
    stderr = float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else math.nan
    return float(np.mean(values)), stderr
