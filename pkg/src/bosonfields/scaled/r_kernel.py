"""
The kernel R on I = [−½, ½] that drives the type-II BEAM condensate.

It has the exact eigen-expansion

    R(u, v) = Σ_{n≥1} r_n e_n(u) e_n(v),
    r_n = c / (n² + α²),  e_n(u) = √2 sin(nπ(u + ½)),  c = 8m/(βħ²π²)

and the closed form (for u ≤ v)

    R(u, v) = c · (π/α) · sinh(πα(½ + u)) sinh(πα(½ − v)) / sinh(πα)

which continues to α² < 0 with sin in place of sinh, and to α = 0 as
c·π²(½ + u)(½ − v).  R is zero when α = ∞.  Positivity of every r_n
needs α² > −1.

"""

from dataclasses import dataclass
import math

import numpy as np
from numpy.typing import ArrayLike

from bosonfields.errors import DomainError, SpectralPositivityError
from bosonfields.geometry import ThermoParams


SERIES_CHUNK = 8192


def _log_sinh(x: np.ndarray) -> np.ndarray:
    """
    log sinh(x) for x > 0, without overflow.
    """
    return x + np.log(-np.expm1(-2 * x)) - math.log(2)  # type: ignore[no-any-return]


@dataclass(frozen=True)
class RKernel:
    thermo: ThermoParams
    alpha_squared: float

    def __post_init__(self) -> None:
        if not (self.alpha_squared > -1):
            raise SpectralPositivityError(self.alpha_squared)

    @property
    def prefactor(self) -> float:
        """
        c = 8m/(βħ²π²)
        """
        t = self.thermo
        return 8 * t.mass / (t.beta * t.hbar**2 * math.pi**2)

    @property
    def is_zero(self) -> bool:
        return math.isinf(self.alpha_squared)

    def eigenvalues(self, n: ArrayLike) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        if self.is_zero:
            return np.zeros_like(n)
        return self.prefactor / (n**2 + self.alpha_squared)  # type: ignore[no-any-return]

    def tail_sum(self, N: int) -> float:
        """
        Σ_{n>N} r_n, by the midpoint Euler-Maclaurin formula.
        """
        if self.is_zero:
            return 0.0

        a2 = self.alpha_squared
        start = N + 0.5

        if a2 > 0:
            a = math.sqrt(a2)
            integral = (math.pi / 2 - math.atan(start / a)) / a
        elif a2 < 0:
            a = math.sqrt(-a2)
            integral = math.log((start + a) / (start - a)) / (2 * a)
        else:
            integral = 1 / start

        derivative = -2 * start / (start**2 + a2) ** 2
        return self.prefactor * (integral + derivative / 24)

    def __call__(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        """
        R(u, v) in closed form.
        """
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        check_interval(u)
        check_interval(v)

        if self.is_zero:
            return np.zeros(np.broadcast(u, v).shape)

        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        left = 0.5 + lo
        right = 0.5 - hi

        c = self.prefactor
        a2 = self.alpha_squared

        if a2 == 0:
            return c * math.pi**2 * left * right  # type: ignore[no-any-return]

        if a2 < 0:
            g = math.sqrt(-a2)
            return (  # type: ignore[no-any-return]
                c * (math.pi / g)
                * np.sin(math.pi * g * left)
                * np.sin(math.pi * g * right)
                / math.sin(math.pi * g)
            )

        a = math.sqrt(a2)
        value = np.zeros(np.broadcast(left, right).shape)
        inside = (np.broadcast_to(left, value.shape) > 0) & (np.broadcast_to(right, value.shape) > 0)

        log_value = (
            _log_sinh(math.pi * a * np.broadcast_to(left, value.shape)[inside])
            + _log_sinh(math.pi * a * np.broadcast_to(right, value.shape)[inside])
            - float(_log_sinh(np.array(math.pi * a)))
        )
        value[inside] = c * (math.pi / a) * np.exp(log_value)
        return value

    def series(self, u: ArrayLike, v: ArrayLike, terms: int, *, tail: bool = True) -> np.ndarray:
        """
        Σ_{n≤terms} r_n e_n(u) e_n(v).

        With ``tail``, we add the non-oscillating part of the remaining
        terms, which only appears on the diagonal u = v.  The
        oscillating part of the remainder is O(1/terms²).
        """
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        check_interval(u)
        check_interval(v)

        u, v = np.broadcast_arrays(u, v)
        flat_u = u.ravel()
        flat_v = v.ravel()

        total = np.zeros(flat_u.shape)

        for start in range(1, terms + 1, SERIES_CHUNK):
            n = np.arange(start, min(start + SERIES_CHUNK, terms + 1), dtype=float)
            r = self.eigenvalues(n)
            total += (
                eigenfunctions(n, flat_u) * eigenfunctions(n, flat_v) * r[None, :]
            ).sum(axis=1)

        if tail:
            # e_n(u)e_n(v) = cos nπ(u − v) − cos nπ(1 + u + v)
            diagonal = np.isclose(flat_u, flat_v, rtol=0, atol=1e-15).astype(float)
            corner = np.isclose(np.abs(flat_u + flat_v), 1.0, rtol=0, atol=1e-15).astype(float)
            total += (diagonal - corner) * self.tail_sum(terms)

        return total.reshape(u.shape)


def eigenfunctions(n: ArrayLike, u: ArrayLike) -> np.ndarray:
    """
    e_n(u) = √2 sin(nπ(u + ½)), as an array of shape (len(u), len(n)).
    """
    n = np.atleast_1d(np.asarray(n, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    return math.sqrt(2) * np.sin(math.pi * n[None, :] * (u[:, None] + 0.5))  # type: ignore[no-any-return]


def check_interval(u: np.ndarray) -> None:
    if np.any(np.abs(u) > 0.5 + 1e-12):
        raise DomainError("R kernel arguments must lie in [−½, ½]")


def r_kernel(
    u: ArrayLike, v: ArrayLike, beam_alpha_squared: float, thermo: ThermoParams
) -> np.ndarray:
    return RKernel(thermo=thermo, alpha_squared=beam_alpha_squared)(u, v)
