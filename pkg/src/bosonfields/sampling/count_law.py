"""
The exact law of the total number of particles in a finite-rank box.

Each mode is occupied by an independent geometric number of particles,
P(N_k = n) = (1 − q_k) q_k^n with q_k = λ_k / (1 + λ_k), so the total
is a convolution of geometric laws.
"""

import math

import numpy as np

from bosonfields.geometry import TruncatedKernel


TAIL_MASS = 1e-12


def geometric_pmf(mean: float, tail: float) -> np.ndarray:
    """
    P(N = 0), …, P(N = n_max) for a geometric variable with this mean,
    where n_max is chosen so the dropped tail q^{n_max+1} is ≤ ``tail``.
    """
    if mean == 0:
        return np.array([1.0])

    q = mean / (1 + mean)
    n_max = max(0, math.ceil(math.log(tail) / math.log(q)) - 1)
    return (1 - q) * q ** np.arange(n_max + 1)


def count_law(kernel: TruncatedKernel) -> np.ndarray:
    """
    P(N = n) for n = 0, 1, …, up to the point where the remaining mass
    is at most 1e-12.
    """
    if kernel.rank == 0:
        return np.array([1.0])

    per_mode_tail = TAIL_MASS / (2 * kernel.rank)

    pmf = np.array([1.0])
    for lam in kernel.occupations:
        pmf = np.convolve(pmf, geometric_pmf(float(lam), per_mode_tail))

    # Trim the far tail, which only holds round-off.
    cumulative_tail = np.cumsum(pmf[::-1])[::-1]
    keep = int(np.searchsorted(-cumulative_tail, -TAIL_MASS / 2, side="right"))
    return pmf[: max(keep, 1)]


def count_mean(kernel: TruncatedKernel) -> float:
    return float(np.sum(kernel.occupations))
