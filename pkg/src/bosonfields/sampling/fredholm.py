"""
Closed forms for the Laplace functional E[exp(−⟨f, ξ⟩)] of a boson
point process with a finite-rank kernel.

With g = 1 − e^{−f}, the matrix

    M_ij = √λ_i √λ_j ∫ g(x) conj(φ_i(x)) φ_j(x) dx

gives E[exp(−⟨f, ξ⟩)] = det(1 + M)⁻¹.  A condensate of density κ with
profile u₀ adds a rank-one correction: the result is further divided by

    1 + κ·(c₀ − hᴴ(1 + M)⁻¹h),

where c₀ = ∫ g|u₀|² and h_i = √λ_i ∫ g conj(φ_i) u₀.

"""

import logging
import math

import numpy as np

from bosonfields.errors import DomainError, QuadratureError
from bosonfields.geometry import TestFunction, TruncatedKernel, eigenfunction_values
from bosonfields.geometry.regions import tensor_gauss_legendre
from .condensate import CondensateProfile, FlatProfile, GroundStateProfile


logger = logging.getLogger(__name__)


QUADRATURE_ORDERS = (8, 12, 16, 24, 32, 48, 64)

QUADRATURE_RTOL = 1e-8

# Skip quadrature orders whose node-by-mode matrix would be bigger
# than this.
MAX_QUADRATURE_ENTRIES = 40_000_000


def default_profile(kernel: TruncatedKernel) -> CondensateProfile:
    """
    The condensate profile for a kernel: the ground state of a Dirichlet
    box, or the flat profile for a periodic box.
    """
    if kernel.bc == "dirichlet" and not kernel.is_limit:
        return GroundStateProfile(kernel.box)
    else:
        return FlatProfile()


def _assemble(
    kernel: TruncatedKernel,
    f: TestFunction,
    profile: CondensateProfile,
    order: int,
) -> tuple[np.ndarray, np.ndarray, float]:
    nodes, weights = tensor_gauss_legendre(f.support, order)

    g = -np.expm1(-f(nodes))
    wg = weights * g

    phi = eigenfunction_values(kernel.box, kernel.modes, kernel.bc, nodes)
    root_lam = np.sqrt(kernel.occupations)

    scaled = phi * root_lam
    M = np.conj(scaled).T @ (wg[:, None] * scaled)

    u0 = profile(nodes)
    h = np.conj(scaled).T @ (wg * u0)
    c0 = float(np.sum(wg * np.abs(u0) ** 2))

    return M, h, c0


def _log_laplace(M: np.ndarray, h: np.ndarray, c0: float, kappa: float) -> float:
    identity = np.eye(len(M))

    sign, logdet = np.linalg.slogdet(identity + M)
    if np.real(sign) <= 0:
        raise DomainError("det(1 + M) is not positive; is the test function non-negative?")

    value = -float(logdet)

    if kappa > 0:
        if len(M):
            q = c0 - float(np.real(np.conj(h) @ np.linalg.solve(identity + M, h)))
        else:
            q = c0
        value -= math.log1p(kappa * q)

    return value


def laplace_closed(
    kernel: TruncatedKernel,
    f: TestFunction,
    kappa: float = 0.0,
    *,
    profile: CondensateProfile | None = None,
) -> float:
    """
    E[exp(−⟨f, ξ⟩)] for the boson process with this kernel, plus an
    optional condensate of density κ.

    The integrals are done with tensor-product Gauss-Legendre on the
    support of f, increasing the order until the value stops changing.
    """
    if kappa < 0:
        raise DomainError(f"Condensate density must be ≥ 0, got {kappa!r}")

    if profile is None:
        profile = default_profile(kernel)

    if f.support.dimension != 3:
        raise DomainError("Test functions for a 3D kernel need a 3D support")

    if not f.support.is_inside(kernel.box):
        raise DomainError(
            f"Test function support {f.support.to_json()} is not inside the box {kernel.box.lengths}"
        )

    orders: list[int] = []
    values: list[float] = []

    for order in QUADRATURE_ORDERS:
        if order**3 * max(kernel.rank, 1) > MAX_QUADRATURE_ENTRIES:
            break

        M, h, c0 = _assemble(kernel, f, profile, order)
        log_value = _log_laplace(M, h, c0, kappa)

        orders.append(order)
        values.append(math.exp(log_value))

        if len(values) >= 2 and abs(values[-1] - values[-2]) <= QUADRATURE_RTOL * abs(values[-1]):
            logger.debug("laplace_closed for %s converged at order %d", f.name, order)
            return values[-1]

    raise QuadratureError(orders=orders, values=values)


def constant_laplace_product(kernel: TruncatedKernel, s: float) -> float:
    """
    E[e^{−sN}] for the total count N in the box, as a product over the
    retained modes of (1 − e^{−y_k}) / (1 − e^{−y_k − s}), where λ_k =
    1/(e^{y_k} − 1).
    """
    if s < 0:
        raise DomainError(f"Need s ≥ 0, got {s!r}")

    if kernel.rank == 0:
        return 1.0

    with np.errstate(divide="ignore"):
        y = np.log1p(1 / kernel.occupations)

    return float(np.prod(-np.expm1(-y) / -np.expm1(-y - s)))


def det_factorization_gap(A: np.ndarray, B: np.ndarray) -> float:
    """
    The relative gap between det(1 + A + B) and det(1 + B)·det(1 + A(1 + B)⁻¹).
    """
    identity = np.eye(len(A))
    lhs = np.linalg.det(identity + A + B)
    rhs = np.linalg.det(identity + B) * np.linalg.det(identity + A @ np.linalg.inv(identity + B))
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
