"""
The function φ on [0, ∞) that controls type-II condensation in a BEAM:

    φ(x) = Σ_{s odd ≥ 1} 1 / (s² − 1 + x)

It has three independent evaluations:

*   the series, with an Euler-Maclaurin tail
*   the closed form φ(x) = π/(4√c) · tanh(π√c/2), with c = x − 1
    (continued to c < 0 with tan in place of tanh)
*   a digamma form, from factorising s² − 1 + x over the odd integers

φ(0) = ∞, φ(1) = π²/8, and φ(x) ~ π/(4√x) as x → ∞.

"""

import math

import numpy as np
from scipy import optimize, special

from bosonfields.errors import ConvergenceError, DomainError


SERIES_TERMS = 1000


def _check_domain(x: float) -> None:
    if not (x >= 0):
        raise DomainError(f"φ is defined on [0, ∞), got x={x!r}")


def phi(x: float) -> float:
    """
    The closed form of φ.
    """
    _check_domain(x)

    if x == 0:
        return math.inf

    if math.isinf(x):
        return 0.0

    c = x - 1

    if abs(c) < 1e-6:
        z = math.pi**2 * c / 4
        return math.pi**2 / 8 * (1 - z / 3 + 2 * z**2 / 15)
    elif c > 0:
        root = math.sqrt(c)
        return math.pi / (4 * root) * math.tanh(math.pi * root / 2)
    else:
        # tan(πs/2) = 1/tan(π(1 − s)/2), and 1 − s = x/(1 + s) keeps
        # full precision as x → 0.
        s = math.sqrt(-c)
        return math.pi / (4 * s * math.tan(math.pi * x / (2 * (1 + s))))


def phi_tail(x: float, N: int) -> float:
    """
    Σ_{j≥N} 1/((2j+1)² − 1 + x), from the midpoint Euler-Maclaurin
    formula on u = 2j + 1, with the first derivative correction.
    """
    c = x - 1
    W = 2 * N

    if c > 0:
        root = math.sqrt(c)
        integral = math.atan(root / W) / (2 * root)
    elif c < 0:
        s = math.sqrt(-c)
        integral = math.atanh(s / W) / (2 * s)
    else:
        integral = 1 / (2 * W)

    return integral - N / (3 * (4 * N**2 + c) ** 2)


def phi_series(x: float, terms: int = SERIES_TERMS) -> float:
    """
    The defining series of φ, summed directly for the first ``terms``
    odd s and with an Euler-Maclaurin tail for the rest.
    """
    _check_domain(x)

    if x == 0:
        return math.inf

    s = 2 * np.arange(terms, dtype=float) + 1
    partial = float(np.sum(1 / (s**2 - 1 + x)))

    return partial + phi_tail(x, terms)


def phi_digamma(x: float) -> float:
    """
    φ via the digamma function:

        φ(x) = (ψ(a) − ψ(b)) / (4√(1 − x)),   a, b = (1 ± √(1 − x))/2

    For x > 1 the square root is imaginary and the result is real.
    """
    _check_domain(x)

    if x == 0:
        return math.inf

    if abs(1 - x) < 1e-10:
        return float(special.polygamma(1, 0.5)) / 4

    root = np.sqrt(complex(1 - x))
    a = (1 + root) / 2
    b = x / (4 * a)

    return float(np.real((special.psi(a) - special.psi(b)) / (4 * root)))


def phi_inverse(y: float) -> float:
    """
    The x ≥ 0 with φ(x) = y, for y > 0.
    """
    if not (y > 0) or math.isinf(y):
        raise DomainError(f"φ takes values in (0, ∞), got y={y!r}")

    lo, hi = 1.0, 1.0
    while phi(hi) > y:
        hi *= 2
    while phi(lo) < y:
        lo /= 2

    if lo == hi:
        return lo

    try:
        root = optimize.brentq(lambda x: phi(x) - y, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=500)
    except (RuntimeError, ValueError) as err:
        raise ConvergenceError(f"Could not invert φ at y={y!r}: {err}", bracket=(lo, hi))

    return float(root)
