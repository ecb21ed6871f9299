class BosonFieldsException(Exception):
    pass


class DomainError(BosonFieldsException, ValueError):
    """
    Thrown when an argument lies outside the domain of an operation,
    e.g. a position outside the box or a density above ρ_c for
    ``invert_density``.
    """

    pass


class FloatRangeError(BosonFieldsException):
    """
    Thrown when a box side or volume would overflow a float.

    ``max_L`` is the largest admissible value of the scale parameter.
    """

    def __init__(self, *, quantity: str, L: float, max_L: float) -> None:
        self.quantity = quantity
        self.L = L
        self.max_L = max_L
        super().__init__(
            f"{quantity} overflows floating point range at L={L!r}; "
            f"the largest admissible L is {max_L:.6g}"
        )


class StabilityError(BosonFieldsException):
    """
    Thrown when the gap Δ = ε₁ − μ is not strictly positive for a
    finite box, so the ground state occupation is infinite.
    """

    def __init__(self, delta: float) -> None:
        self.delta = delta
        super().__init__(f"The gas is unstable: need Δ > 0, got Δ={delta!r}")


class EmptyKernelError(BosonFieldsException):
    def __init__(self, cutoff: float, ground_energy: float) -> None:
        self.cutoff = cutoff
        self.ground_energy = ground_energy
        super().__init__(
            f"Energy cutoff {cutoff!r} is below the ground state energy "
            f"{ground_energy!r}; the kernel would have no modes"
        )


class ConvergenceError(BosonFieldsException):
    """
    Thrown when a root finder or a limit extrapolation doesn't converge.
    """

    def __init__(self, message: str, *, bracket: tuple[float, float] | None) -> None:
        self.bracket = bracket
        if bracket is not None:
            message = f"{message} (bracket: [{bracket[0]!r}, {bracket[1]!r}])"
        super().__init__(message)


class QuadratureError(BosonFieldsException):
    """
    Thrown when a quadrature rule doesn't stabilise.

    Gauss-Legendre doubling records the ``orders`` it tried and the
    ``values`` they gave; adaptive quadrature records its ``interval``,
    its estimate and scipy's error estimate ``abserr``.
    """

    def __init__(
        self,
        *,
        values: list[float],
        orders: list[int] | None = None,
        interval: tuple[float, float] | None = None,
        abserr: float | None = None,
    ) -> None:
        self.orders = orders
        self.values = values
        self.interval = interval
        self.abserr = abserr

        if orders is not None:
            message = (
                f"Gauss-Legendre quadrature did not stabilise: orders={orders}, "
                f"values={values}"
            )
        else:
            message = (
                f"Adaptive quadrature did not converge on {interval}: "
                f"estimate={values[-1]!r}, error estimate={abserr!r}"
            )

        super().__init__(message)


class UnsupportedRegimeError(BosonFieldsException):
    pass


class SpectralPositivityError(BosonFieldsException):
    """
    Thrown when the R kernel would have a non-positive eigenvalue,
    i.e. when α² ≤ −1.
    """

    def __init__(self, alpha_squared: float) -> None:
        self.alpha_squared = alpha_squared
        super().__init__(
            f"The R kernel needs α² > -1 for positive eigenvalues, got {alpha_squared!r}"
        )


class ThinningBoundError(BosonFieldsException):
    def __init__(self, expected_candidates: float) -> None:
        self.expected_candidates = expected_candidates
        super().__init__(
            f"Thinning bound gives {expected_candidates:.3g} expected candidate "
            "points; use a smaller window or a lower mode cutoff"
        )


class ConfigurationError(BosonFieldsException):
    pass
