"""
Monte Carlo estimators and goodness-of-fit checks for sampled
configurations.
"""

from collections.abc import Callable, Sequence
import logging
import math

import numpy as np
from scipy import stats

from bosonfields.errors import DomainError
from bosonfields.geometry import TestFunction
from bosonfields.seeding import run_in_batches
from bosonfields.types import ChiSquareVerdict
from .cox import PointConfiguration


logger = logging.getLogger(__name__)


MIN_LAPLACE_SAMPLES = 100

MIN_EXPECTED_PER_BIN = 5.0

Z_SCORE_LIMIT = 4.0


def jackknife_mean(values: np.ndarray) -> tuple[float, float]:
    """
    The mean of ``values`` and its jackknife standard error.
    """
    n = len(values)
    if n < 2:
        raise DomainError(f"The jackknife needs at least 2 values, got {n}")

    total = float(np.sum(values))
    leave_one_out = (total - values) / (n - 1)
    spread = float(np.sum((leave_one_out - np.mean(leave_one_out)) ** 2))

    return total / n, math.sqrt((n - 1) / n * spread)


def z_score(estimate: float, expected: float, stderr: float) -> float | None:
    """
    (estimate − expected) / stderr, or None if the estimate is
    deterministic up to round-off, e.g. every draw was the same.
    """
    if stderr > 1e-12 * max(1.0, abs(expected)):
        return (estimate - expected) / stderr
    else:
        return None


def agrees_with(estimate: float, expected: float, stderr: float) -> bool:
    """
    Whether a Monte Carlo estimate is within Z_SCORE_LIMIT standard
    errors of the expected value.
    """
    z = z_score(estimate, expected, stderr)
    if z is None:
        return math.isclose(estimate, expected, rel_tol=1e-9, abs_tol=1e-9)
    return abs(z) <= Z_SCORE_LIMIT


def laplace_from_configurations(
    configurations: Sequence[PointConfiguration], f: TestFunction
) -> tuple[float, float]:
    """
    The mean of exp(−⟨f, ξ⟩) over some configurations, with its
    jackknife standard error.
    """
    values = np.array([math.exp(-f.pair(c.points)) for c in configurations])
    return jackknife_mean(values)


def laplace_empirical(
    sampler: Callable[[np.random.Generator], PointConfiguration],
    f: TestFunction,
    n_samples: int,
    rng: np.random.Generator,
    *,
    threads: int = 1,
) -> tuple[float, float]:
    """
    Estimate E[exp(−⟨f, ξ⟩)] from ``n_samples`` independent draws of
    ``sampler``.

    The draws are split into batches with their own substreams, all
    derived from one number drawn from ``rng``, so the estimate doesn't
    depend on ``threads``.
    """
    if n_samples < MIN_LAPLACE_SAMPLES:
        raise DomainError(
            f"laplace_empirical needs at least {MIN_LAPLACE_SAMPLES} samples, got {n_samples}"
        )

    root_seed = int(rng.integers(0, 2**63))

    values = run_in_batches(
        lambda batch_rng, count: [
            math.exp(-f.pair(sampler(batch_rng).points)) for _ in range(count)
        ],
        n_samples,
        seed=root_seed,
        label=f"laplace/{f.name}",
        threads=threads,
    )

    return jackknife_mean(np.array(values))


def first_moment(
    configurations: Sequence[PointConfiguration], f: TestFunction
) -> tuple[float, float]:
    """
    The mean of ⟨f, ξ⟩ with its standard error.
    """
    return jackknife_mean(np.array([f.pair(c.points) for c in configurations]))


def chi_square_counts(counts: Sequence[int] | np.ndarray, pmf: np.ndarray) -> ChiSquareVerdict:
    """
    Pearson's chi-square test of sampled counts against a probability
    mass function on {0, 1, 2, …}.

    Bins are merged from the right until each one expects at least five
    counts; the last bin collects all of the upper tail.
    """
    counts = np.asarray(counts, dtype=int)
    n = len(counts)

    if n == 0:
        raise DomainError("Can't run a chi-square test with no samples")

    expected = n * np.asarray(pmf, dtype=float)
    observed = np.bincount(counts, minlength=len(expected)).astype(float)

    # Fold everything beyond the pmf into the last bin.
    if len(observed) > len(expected):
        observed[len(expected) - 1] += observed[len(expected) :].sum()
        observed = observed[: len(expected)]
    expected[-1] += n - expected.sum()

    merged_observed: list[float] = []
    merged_expected: list[float] = []

    acc_o = acc_e = 0.0
    for o, e in zip(observed[::-1], expected[::-1]):
        acc_o += o
        acc_e += e
        if acc_e >= MIN_EXPECTED_PER_BIN:
            merged_observed.append(acc_o)
            merged_expected.append(acc_e)
            acc_o = acc_e = 0.0

    if acc_e > 0 or acc_o > 0:
        if merged_expected:
            merged_observed[-1] += acc_o
            merged_expected[-1] += acc_e
        else:
            merged_observed.append(acc_o)
            merged_expected.append(acc_e)

    obs = np.array(merged_observed)
    exp = np.array(merged_expected)

    dof = max(len(exp) - 1, 1)
    statistic = float(np.sum((obs - exp) ** 2 / exp))
    quantile = float(stats.chi2.ppf(0.99, dof))
    p_value = float(stats.chi2.sf(statistic, dof))

    logger.info(
        "Chi-square: statistic=%.4g, dof=%d, 0.99 quantile=%.4g, p=%.4g",
        statistic,
        dof,
        quantile,
        p_value,
    )

    return {
        "statistic": statistic,
        "degrees_of_freedom": dof,
        "quantile_99": quantile,
        "p_value": p_value,
        "passed": statistic <= quantile,
    }


def exponential_ks(samples: np.ndarray, mean: float) -> float:
    """
    The p-value of a Kolmogorov-Smirnov test that the samples are
    exponential with this mean.
    """
    return float(stats.kstest(samples, "expon", args=(0, mean)).pvalue)
