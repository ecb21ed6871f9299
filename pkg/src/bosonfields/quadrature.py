"""
Thin wrappers around scipy's adaptive quadrature.

We call ``quad`` with ``full_output`` so that scipy returns its
diagnostics rather than issuing an IntegrationWarning.  If scipy only
complains that it couldn't reach the requested tolerance but its error
estimate is still small, we log the diagnostics and keep the result;
otherwise we raise QuadratureError.
"""

from collections.abc import Callable, Sequence
import logging
import math
import typing

from scipy import integrate

from bosonfields.errors import QuadratureError


logger = logging.getLogger(__name__)


# The largest relative error estimate we accept when scipy reports
# trouble.  The requested epsrel is much tighter than this.
ACCEPTED_RTOL = 1e-7


def quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    points: Sequence[float] | None = None,
    epsrel: float = 1e-11,
    limit: int = 200,
) -> float:
    kwargs: dict[str, typing.Any] = {"epsabs": 0.0, "epsrel": epsrel, "limit": limit}
    if points:
        kwargs["points"] = list(points)

    result = integrate.quad(func, a, b, full_output=1, **kwargs)
    estimate, abserr = float(result[0]), float(result[1])

    if not math.isfinite(estimate):
        raise QuadratureError(values=[estimate], interval=(a, b), abserr=abserr)

    if len(result) > 3:
        if not (abserr <= ACCEPTED_RTOL * abs(estimate)):
            logger.warning(
                "quad on [%r, %r] failed: %s (estimate=%r, abserr=%r)",
                a,
                b,
                result[3],
                estimate,
                abserr,
            )
            raise QuadratureError(values=[estimate], interval=(a, b), abserr=abserr)

        logger.debug(
            "quad on [%r, %r] reported: %s (estimate=%r, abserr=%r)",
            a,
            b,
            result[3],
            estimate,
            abserr,
        )

    return estimate
