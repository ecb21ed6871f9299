"""
The limit random fields at each scale.

At the S, D and R scales the limit is a mixture of deterministic
densities a + b·t·profile(x) with t ~ Exp(1), so

    E[exp(−⟨f, η⟩)] = exp(−a∫f) / (1 + b∫f·profile).

At the I scale the density is K^{Δ∞} plus a squared Gaussian field
with covariance R, so

    E[exp(−⟨f, η⟩)] = exp(−K^{Δ∞}∫f) / Det[1 + fR].

"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
import functools
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from bosonfields.errors import (
    ConfigurationError,
    DomainError,
    QuadratureError,
    SpectralPositivityError,
)
from bosonfields.geometry import (
    AnisotropyProfile,
    BeamProfile,
    SlabProfile,
    TestFunction,
    ThermoParams,
    Window,
    constant_function,
    cosine_bump,
    gaussian_bump,
)
from bosonfields.geometry.regions import tensor_gauss_legendre
from bosonfields.thermo import (
    ConstantGap,
    GapSchedule,
    PowerGap,
    beam_alpha_squared,
    beam_kappa_tilde_limit,
    rho_of_delta,
    slab_kappa_limits,
)
from .r_kernel import RKernel, eigenfunctions
from .transforms import Scale


QUADRATURE_ORDERS = (8, 12, 16, 24, 32, 48, 64)

DETERMINANT_MODES = 512

SAMPLER_MODES = 2048


@dataclass(frozen=True)
class LimitRFSpec:
    scale: Scale
    a: float
    b: float = 0.0
    r_kernel: RKernel | None = None

    def __post_init__(self) -> None:
        if not (0 <= self.a < math.inf) or not (0 <= self.b < math.inf):
            raise DomainError(f"Need finite a, b ≥ 0, got a={self.a!r}, b={self.b!r}")
        if self.scale == "I" and self.r_kernel is None:
            raise ConfigurationError("The I-scale field needs an R kernel")

    @property
    def dimension(self) -> int:
        return {"S": 2, "D": 3, "R": 3, "I": 1}[self.scale]

    def profile(self, x: np.ndarray) -> np.ndarray:
        """
        The shape of the condensate part of the density.
        """
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        c2 = np.cos(math.pi * pts) ** 2

        if self.scale == "S":
            return c2[:, 0] * c2[:, 1]  # type: ignore[no-any-return]
        elif self.scale == "D":
            return c2[:, 2]  # type: ignore[no-any-return]
        elif self.scale == "R":
            return c2[:, 1] * c2[:, 2]  # type: ignore[no-any-return]
        else:
            return np.ones(len(pts))


def _points(spec: LimitRFSpec, x: np.ndarray) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if spec.dimension == 1:
        return pts.reshape(-1, 1)
    return np.atleast_2d(pts)


def stable_integral(
    func: Callable[[np.ndarray], np.ndarray], window: Window, *, rtol: float = 1e-10
) -> float:
    """
    ∫ func over the window, with tensor-product Gauss-Legendre of
    increasing order until two successive values agree.
    """
    orders: list[int] = []
    values: list[float] = []

    for order in QUADRATURE_ORDERS:
        if order**window.dimension > 2_000_000:
            break

        nodes, weights = tensor_gauss_legendre(window, order)
        orders.append(order)
        values.append(float(np.sum(weights * func(nodes))))

        if len(values) >= 2 and abs(values[-1] - values[-2]) <= rtol * max(abs(values[-1]), 1e-300):
            return values[-1]

        if len(values) >= 2 and values[-1] == values[-2] == 0:
            return 0.0

    raise QuadratureError(orders=orders, values=values)


# The coordinates that scale with the confined side(s) of the box, where
# the profile only makes sense on [−½, ½].
CONFINED_AXES: dict[Scale, tuple[int, ...]] = {
    "S": (0, 1),
    "D": (2,),
    "R": (1, 2),
    "I": (0,),
}


def _check_support(spec: LimitRFSpec, f: TestFunction) -> None:
    if f.support.dimension != spec.dimension:
        raise ConfigurationError(
            f"A test function for the {spec.scale} scale must be {spec.dimension}-dimensional"
        )

    for axis in CONFINED_AXES[spec.scale]:
        lo, hi = f.support.lower[axis], f.support.upper[axis]
        if not (lo >= -0.5 - 1e-12 and hi <= 0.5 + 1e-12):
            raise DomainError(
                f"At the {spec.scale} scale, coordinate {axis} of the test function "
                f"support must lie in [-0.5, 0.5], got [{lo!r}, {hi!r}]"
            )


def _interval_rule(f: TestFunction, order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes on the support of f, and the weights w·f.
    """
    x, w = leggauss(order)
    lo, hi = f.support.lower[0], f.support.upper[0]
    half = (hi - lo) / 2
    nodes = lo + half * (x + 1)
    return nodes, half * w * f(nodes.reshape(-1, 1))


def sine_log_det(
    r: RKernel,
    f: TestFunction,
    modes: int = DETERMINANT_MODES,
    *,
    order: int | None = None,
    tail: bool = True,
) -> float:
    """
    log Det[1 + fR], in the eigenbasis of R.

    The matrix ∫ f √r_m e_m √r_n e_n is computed with Gauss-Legendre of
    the given order (by default enough to resolve every retained mode).
    With ``tail``, we add the trace ∫f·Σ_{n>modes} r_n of the dropped
    modes; without it, this is exactly the log-determinant for the
    field truncated to ``modes`` modes, with ⟨f, η⟩ taken by the same
    quadrature.
    """
    if r.is_zero:
        return 0.0

    if order is None:
        order = 2 * modes + 64

    n = np.arange(1, modes + 1, dtype=float)
    nodes, weighted_f = _interval_rule(f, order)

    B = np.sqrt(weighted_f)[:, None] * eigenfunctions(n, nodes) * np.sqrt(r.eigenvalues(n))[None, :]

    # Det[1 + BᵀB] = Det[1 + BBᵀ], so use whichever side is smaller.
    gram = B.T @ B if modes <= order else B @ B.T
    sign, logdet = np.linalg.slogdet(np.eye(len(gram)) + gram)

    if sign <= 0:
        raise DomainError("Det[1 + fR] is not positive; is f non-negative?")

    if tail:
        return float(logdet) + r.tail_sum(modes) * float(np.sum(weighted_f))
    else:
        return float(logdet)


def nystrom_log_det(r: RKernel, f: TestFunction, points: int = 200) -> float:
    """
    log Det[1 + fR] from the Gauss-Legendre Nyström discretisation of
    the closed-form kernel, as an independent check on ``sine_log_det``.

    The kernel has a kink on the diagonal, so this only converges
    like 1/points².
    """
    x, w = leggauss(points)
    u = x / 2
    weights = w / 2

    root_fw = np.sqrt(weights * f(u.reshape(-1, 1)))
    K = r(u[:, None], u[None, :])

    sign, logdet = np.linalg.slogdet(np.eye(points) + root_fw[:, None] * K * root_fw[None, :])
    return float(logdet)


def limit_gf(spec: LimitRFSpec, f: TestFunction) -> float:
    """
    E[exp(−⟨f, η⟩)] for the limit field.
    """
    _check_support(spec, f)

    integral_f = stable_integral(f, f.support)

    if spec.scale == "I":
        assert spec.r_kernel is not None
        return math.exp(-spec.a * integral_f - sine_log_det(spec.r_kernel, f))

    integral_fp = stable_integral(lambda pts: f(pts) * spec.profile(pts), f.support)
    return math.exp(-spec.a * integral_f) / (1 + spec.b * integral_fp)


@dataclass(frozen=True)
class MixtureDensity:
    """
    One draw x ↦ a + b·t·profile(x) of an S, D or R field.
    """

    spec: LimitRFSpec
    t: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        pts = _points(self.spec, x)
        return self.spec.a + self.spec.b * self.t * self.spec.profile(pts)  # type: ignore[no-any-return]


@dataclass(frozen=True)
class SquaredGaussianDensity:
    """
    One draw u ↦ a + |Σ_n √r_n ζ_n e_n(u)|² of the I field.
    """

    a: float
    amplitudes: np.ndarray

    def __call__(self, u: np.ndarray) -> np.ndarray:
        uu = np.ravel(np.asarray(u, dtype=float))
        n = np.arange(1, len(self.amplitudes) + 1)
        field = eigenfunctions(n, uu) @ self.amplitudes
        return self.a + np.abs(field) ** 2  # type: ignore[no-any-return]


LimitDensity = MixtureDensity | SquaredGaussianDensity


def sample_limit_density(
    spec: LimitRFSpec, rng: np.random.Generator, *, modes: int = SAMPLER_MODES
) -> LimitDensity:
    if spec.scale == "I":
        assert spec.r_kernel is not None
        n = np.arange(1, modes + 1)
        zeta = (rng.standard_normal(modes) + 1j * rng.standard_normal(modes)) / math.sqrt(2)
        return SquaredGaussianDensity(
            a=spec.a, amplitudes=np.sqrt(spec.r_kernel.eigenvalues(n)) * zeta
        )

    return MixtureDensity(spec=spec, t=float(rng.exponential()))


def density_values(
    spec: LimitRFSpec, densities: Sequence[LimitDensity], x: np.ndarray
) -> np.ndarray:
    """
    Evaluate many draws at the same points, as an array of shape
    (len(densities), len(x)).
    """
    pts = _points(spec, x)

    if spec.scale != "I":
        t = np.array([d.t for d in densities if isinstance(d, MixtureDensity)])
        return spec.a + spec.b * t[:, None] * spec.profile(pts)[None, :]  # type: ignore[no-any-return]

    amplitudes = np.stack(
        [d.amplitudes for d in densities if isinstance(d, SquaredGaussianDensity)]
    )
    basis = eigenfunctions(np.arange(1, amplitudes.shape[1] + 1), pts.ravel())
    return spec.a + np.abs(amplitudes @ basis.T) ** 2  # type: ignore[no-any-return]


PAIRING_ORDER = 256


@dataclass(frozen=True)
class FieldPairing:
    """
    Evaluates ⟨f, η⟩ for many sampled densities η of one limit field,
    and the generating functional of exactly the law we sample.

    For a mixture field ⟨f, η⟩ = a∫f + b·t·∫f·profile, so only the two
    integrals are needed.  For the I field we integrate with a fixed
    Gauss-Legendre rule; the generating functional of the truncated
    field under that rule is a finite determinant, with no tail.
    """

    spec: LimitRFSpec
    f: TestFunction
    modes: int = SAMPLER_MODES
    order: int = PAIRING_ORDER

    def __post_init__(self) -> None:
        _check_support(self.spec, self.f)

    @functools.cached_property
    def _integrals(self) -> tuple[float, float]:
        if self.spec.scale == "I":
            _, weighted_f = _interval_rule(self.f, self.order)
            return float(np.sum(weighted_f)), 0.0

        return (
            stable_integral(self.f, self.f.support),
            stable_integral(lambda pts: self.f(pts) * self.spec.profile(pts), self.f.support),
        )

    @functools.cached_property
    def _weighted_basis(self) -> tuple[np.ndarray, np.ndarray]:
        nodes, weighted_f = _interval_rule(self.f, self.order)
        return eigenfunctions(np.arange(1, self.modes + 1), nodes), weighted_f

    def __call__(self, densities: Sequence[LimitDensity]) -> np.ndarray:
        integral_f, integral_fp = self._integrals
        background = self.spec.a * integral_f

        if not densities:
            return np.zeros(0)

        if self.spec.scale != "I":
            t = np.array([d.t for d in densities if isinstance(d, MixtureDensity)])
            return background + self.spec.b * t * integral_fp  # type: ignore[no-any-return]

        basis, weighted_f = self._weighted_basis
        amplitudes = np.stack(
            [d.amplitudes for d in densities if isinstance(d, SquaredGaussianDensity)]
        )
        if amplitudes.shape[1] != self.modes:
            raise ConfigurationError(
                f"Expected draws with {self.modes} modes, got {amplitudes.shape[1]}"
            )

        field = basis @ amplitudes.T
        return background + weighted_f @ (np.abs(field) ** 2)  # type: ignore[no-any-return]

    def closed_form(self) -> float:
        """
        E[exp(−⟨f, η⟩)] for the law that ``sample_limit_density`` draws
        from, with ⟨f, η⟩ computed as in ``__call__``.
        """
        if self.spec.scale != "I":
            return limit_gf(self.spec, self.f)

        assert self.spec.r_kernel is not None
        integral_f, _ = self._integrals
        log_det = sine_log_det(
            self.spec.r_kernel, self.f, self.modes, order=self.order, tail=False
        )
        return math.exp(-self.spec.a * integral_f - log_det)


def fixture_functions(dimension: int) -> list[TestFunction]:
    """
    A fixed family of test functions on the unit cell [−½, ½]^d, used
    to compare the generating functionals of the finite and limit
    fields.
    """
    unit = Window.centred([1.0] * dimension)
    corner = Window(lower=(0.0,) * dimension, upper=(0.5,) * dimension)
    return [
        constant_function(1.0, unit),
        cosine_bump(2.0, unit),
        cosine_bump(1.0, Window.centred([0.5] * dimension)),
        gaussian_bump(1.0, [0.0] * dimension, 0.2, unit),
        constant_function(0.5, corner),
    ]


def limit_density_profile(spec: LimitRFSpec, x: np.ndarray) -> np.ndarray:
    """
    The expected density of the limit field.
    """
    if spec.scale == "I":
        assert spec.r_kernel is not None
        u = np.ravel(np.asarray(x, dtype=float))
        return spec.a + spec.r_kernel(u, u)  # type: ignore[no-any-return]

    return spec.a + spec.b * spec.profile(_points(spec, x))  # type: ignore[no-any-return]


def beam_r_kernel(thermo: ThermoParams, schedule: GapSchedule) -> RKernel:
    """
    The R kernel for a BEAM with γ = 2 and this gap schedule.
    """
    if isinstance(schedule, PowerGap) and schedule.power == 4:
        return RKernel(thermo=thermo, alpha_squared=beam_alpha_squared(thermo, schedule))

    # L⁴Δ(L) → ∞, so α = ∞ and R vanishes.
    if (isinstance(schedule, ConstantGap) and schedule.value > 0) or (
        isinstance(schedule, PowerGap) and schedule.power < 4
    ):
        return RKernel(thermo=thermo, alpha_squared=math.inf)

    raise SpectralPositivityError(-1.0)


def limit_spec_for(
    profile: AnisotropyProfile, thermo: ThermoParams, schedule: GapSchedule, scale: Scale
) -> LimitRFSpec:
    """
    The limit field at a given scale for a gas with this gap schedule.
    """
    background = rho_of_delta(thermo, schedule.delta_inf)

    if scale in ("S", "D"):
        if not isinstance(profile, SlabProfile):
            raise ConfigurationError(f"The {scale} scale needs a SLAB profile")

        kappa1, kappa2 = slab_kappa_limits(thermo, profile.alpha, schedule)

        if scale == "S":
            return LimitRFSpec(scale="S", a=background + kappa2 / 2, b=kappa1 / 2)
        else:
            return LimitRFSpec(scale="D", a=background, b=kappa1 + kappa2)

    if not isinstance(profile, BeamProfile):
        raise ConfigurationError(f"The {scale} scale needs a BEAM profile")

    if scale == "R":
        return LimitRFSpec(scale="R", a=background, b=beam_kappa_tilde_limit(thermo, schedule))

    if profile.gamma != 2:
        raise ConfigurationError(f"The I scale needs a BEAM with γ = 2, got γ={profile.gamma!r}")

    return LimitRFSpec(scale="I", a=background, r_kernel=beam_r_kernel(thermo, schedule))
