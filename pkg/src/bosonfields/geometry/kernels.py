"""
Finite-box kernels K_Λ and the translation-invariant limit kernel.

A TruncatedKernel holds the leading part of the spectral expansion

    K_Λ(x, y) = Σ_k λ_k φ_k(x) conj(φ_k(y)),   λ_k = W(k, L, Δ)

together with a bound on the total occupation of every mode it drops.

"""

from dataclasses import dataclass
import logging
import math

import numpy as np

from bosonfields.errors import ConfigurationError, EmptyKernelError, StabilityError
from bosonfields.quadrature import quad
from bosonfields.types import KernelJson
from .boxes import BoxGeometry, ThermoParams
from .heat_series import mean_theta
from .spectrum import (
    Boundary,
    Mode,
    bose_factor,
    eigenfunction_values,
    ground_mode,
    mode_energies,
)


logger = logging.getLogger(__name__)


# We refuse to enumerate more modes than this -- beyond it, use the
# heat series functions in ``geometry.heat_series`` instead.
MAX_ENUMERATED_MODES = 5_000_000


@dataclass(frozen=True)
class EnergyCutoff:
    energy: float


@dataclass(frozen=True)
class ModeCount:
    count: int


Truncation = EnergyCutoff | ModeCount


@dataclass(frozen=True)
class TruncatedKernel:
    box: BoxGeometry
    thermo: ThermoParams
    delta: float
    bc: Boundary
    modes: np.ndarray
    occupations: np.ndarray
    tail_bound: float
    is_limit: bool = False

    @property
    def rank(self) -> int:
        return len(self.occupations)

    def mode_list(self) -> list[Mode]:
        return [Mode(*(int(k) for k in row)) for row in self.modes]

    def to_json(self) -> KernelJson:
        return {
            "modes": [[int(k) for k in row] for row in self.modes],
            "occupations": [float(lam) for lam in self.occupations],
            "box": {"L1": self.box.L1, "L2": self.box.L2, "L3": self.box.L3},
            "beta": self.thermo.beta,
            "hbar": self.thermo.hbar,
            "mass": self.thermo.mass,
            "delta": self.delta,
            "bc": self.bc,
            "tail_bound": self.tail_bound,
        }


def _axis_range(L: float, energy: float, bc: Boundary, thermo: ThermoParams) -> np.ndarray:
    factor = math.pi if bc == "dirichlet" else 2 * math.pi
    k_max = int(math.floor(L / factor * math.sqrt(max(energy, 0) / thermo.kinetic_coefficient)))

    if bc == "dirichlet":
        return np.arange(1, k_max + 1)
    else:
        return np.arange(-k_max, k_max + 1)


def enumerate_modes(
    box: BoxGeometry, thermo: ThermoParams, bc: Boundary, energy: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Every mode with ε_k ≤ energy, with its energy, in no particular order.
    """
    ranges = [_axis_range(L, energy, bc, thermo) for L in box.lengths]

    if math.prod(len(r) for r in ranges) > 50 * MAX_ENUMERATED_MODES:
        raise ConfigurationError(
            f"Too many modes below energy {energy!r} in box {box.lengths}; "
            "use a lower cutoff or the heat series functions"
        )

    k2, k3 = np.meshgrid(ranges[1], ranges[2], indexing="ij")
    k2, k3 = k2.ravel(), k3.ravel()

    chunks = []
    for k1 in ranges[0]:
        candidates = np.column_stack([np.full_like(k2, k1), k2, k3])
        energies = mode_energies(box, candidates, bc, thermo)
        keep = energies <= energy
        chunks.append((candidates[keep], energies[keep]))

        if sum(len(c[0]) for c in chunks) > MAX_ENUMERATED_MODES:
            raise ConfigurationError(
                f"More than {MAX_ENUMERATED_MODES} modes below energy {energy!r}; "
                "use a lower cutoff or the heat series functions"
            )

    if not chunks:
        return np.empty((0, 3), dtype=int), np.empty(0)

    modes = np.concatenate([c[0] for c in chunks]).astype(int)
    energies = np.concatenate([c[1] for c in chunks])
    return modes, energies


def sort_modes(modes: np.ndarray, energies: np.ndarray) -> np.ndarray:
    """
    Returns the permutation that sorts modes by increasing energy.

    Energies that agree to ~12 significant digits count as equal, and
    ties are broken by descending lexicographic order on (k1, k2, k3),
    so e.g. (2,1,1) comes before (1,2,1).
    """
    scale = float(np.max(np.abs(energies))) if len(energies) else 1.0
    scale = scale or 1.0
    rounded = np.round(energies / scale * 1e12)
    return np.lexsort((-modes[:, 2], -modes[:, 1], -modes[:, 0], rounded))


def tail_occupation_bound(
    box: BoxGeometry,
    thermo: ThermoParams,
    delta: float,
    bc: Boundary,
    energy: float,
) -> float:
    """
    An upper bound on Σ W_k over every mode with ε_k > energy.

    For those modes y_k = β(ε_k − ε_ground + Δ) ≥ y_E, and

        1/(e^y − 1) ≤ e^{−y_E/2}/(1 − e^{−y_E}) · e^{−y/2}

    so the tail is bounded by a multiple of Σ_k e^{−y_k/2}, which
    factorises into one theta function per axis.
    """
    ground_energy = float(
        mode_energies(box, np.array([ground_mode(bc).as_tuple()]), bc, thermo)[0]
    )
    y_cut = thermo.beta * (energy - ground_energy + delta)

    if y_cut <= 0:
        return math.inf

    prefactor = math.exp(-y_cut / 2) / -math.expm1(-y_cut)

    half_beta = thermo.beta / 2
    thetas = []
    for L in box.lengths:
        if bc == "dirichlet":
            a = half_beta * thermo.kinetic_coefficient * math.pi**2 / L**2
            thetas.append(float(mean_theta(np.array([a]))[0]))
        else:
            # Σ_{k∈ℤ} e^{−ak²} = 1 + 2e^{−a} Σ_{k≥1} e^{−a(k²−1)}
            a = half_beta * thermo.kinetic_coefficient * (2 * math.pi / L) ** 2
            thetas.append(1 + 2 * math.exp(-a) * float(mean_theta(np.array([a]))[0]))

    return prefactor * math.exp(-thermo.beta * delta / 2) * math.prod(thetas)


def build_kernel(
    box: BoxGeometry,
    thermo: ThermoParams,
    delta: float,
    truncation: Truncation,
    bc: Boundary = "dirichlet",
) -> TruncatedKernel:
    """
    Enumerate the lowest modes of the box and their occupations.
    """
    if delta <= 0:
        raise StabilityError(delta)

    ground = ground_mode(bc)
    ground_energy = float(mode_energies(box, np.array([ground.as_tuple()]), bc, thermo)[0])

    if isinstance(truncation, EnergyCutoff):
        if truncation.energy < ground_energy:
            raise EmptyKernelError(truncation.energy, ground_energy)

        modes, energies = enumerate_modes(box, thermo, bc, truncation.energy)
        order = sort_modes(modes, energies)
        modes, energies = modes[order], energies[order]
        cutoff = truncation.energy
    else:
        if truncation.count < 1:
            raise EmptyKernelError(0.0, ground_energy)

        # Keep doubling the energy window until it holds enough modes.
        energy = max(ground_energy, thermo.kinetic_coefficient * math.pi**2 / min(box.lengths) ** 2)
        energy *= 1.5
        while True:
            modes, energies = enumerate_modes(box, thermo, bc, energy)
            if len(modes) >= truncation.count:
                break
            energy *= 2

        order = sort_modes(modes, energies)
        modes, energies = modes[order], energies[order]

        keep = truncation.count
        if bc == "periodic":
            # Complete the last degenerate shell, so the kernel diagonal
            # stays translation-invariant.
            scale = float(np.max(energies)) or 1.0
            rounded = np.round(energies / scale * 1e12)
            while keep < len(modes) and rounded[keep] == rounded[keep - 1]:
                keep += 1

        modes, energies = modes[:keep], energies[:keep]

        # Everything we dropped lies strictly above the last kept energy
        # (or ties it, for Dirichlet); bound the tail from there.
        cutoff = float(energies[-1])

    occupations = bose_factor(thermo.beta * (energies - ground_energy + delta))

    tail_bound = tail_occupation_bound(box, thermo, delta, bc, cutoff)

    logger.debug(
        "Built kernel with %d modes in box %r (Δ=%r, tail bound %r)",
        len(modes),
        box.lengths,
        delta,
        tail_bound,
    )

    return TruncatedKernel(
        box=box,
        thermo=thermo,
        delta=delta,
        bc=bc,
        modes=modes,
        occupations=np.asarray(occupations, dtype=float),
        tail_bound=tail_bound,
    )


def kernel_matrix(kernel: TruncatedKernel, xs: np.ndarray, ys: np.ndarray | None = None) -> np.ndarray:
    """
    The matrix [K(x_i, y_j)] for two (n, 3) arrays of points.

    This doesn't check the points lie in the box.
    """
    phi_x = eigenfunction_values(kernel.box, kernel.modes, kernel.bc, xs)
    phi_y = phi_x if ys is None else eigenfunction_values(kernel.box, kernel.modes, kernel.bc, ys)

    return (phi_x * kernel.occupations) @ np.conj(phi_y).T  # type: ignore[no-any-return]


def kernel_diagonal(kernel: TruncatedKernel, xs: np.ndarray) -> np.ndarray:
    """
    K(x, x) at every point of an (n, 3) array.
    """
    phi = eigenfunction_values(kernel.box, kernel.modes, kernel.bc, xs)
    return np.real(np.sum(kernel.occupations * np.abs(phi) ** 2, axis=1))  # type: ignore[no-any-return]


def kernel_eval(
    kernel: TruncatedKernel,
    x: np.ndarray | tuple[float, ...],
    y: np.ndarray | tuple[float, ...],
) -> float | complex:
    """
    K(x, y) = Σ_k λ_k φ_k(x) conj(φ_k(y)).  Real for Dirichlet kernels,
    complex for periodic kernels.
    """
    kernel.box.check_contains(x)
    kernel.box.check_contains(y)

    value = kernel_matrix(kernel, np.asarray(x, dtype=float), np.asarray(y, dtype=float))[0, 0]

    if kernel.bc == "dirichlet":
        return float(np.real(value))
    else:
        return complex(value)


# Gaussian series for the limit kernel
# ====================================
#
# The Bose factor expands as a geometric series, and each term of
# (2π)^{-3} ∫ e^{ik·r} e^{−nβ(ε_k + Δ)} dk is a Gaussian in r:
#
#     K(r) = λ_β^{-3} Σ_{n≥1} e^{−nβΔ} n^{−3/2} exp(−π|r|²/(nλ_β²))
#
# We sum the first N terms directly, and the rest with the midpoint
# Euler-Maclaurin formula.

LIMIT_DIRECT_TERMS = 512

LIMIT_MAX_DIRECT_TERMS = 2**20


def gaussian_series(b: float, c: float) -> float:
    """
    Σ_{n≥1} e^{−nb} n^{−3/2} e^{−c/n}, for b, c ≥ 0.
    """
    N = int(min(max(LIMIT_DIRECT_TERMS, math.ceil(20 * c)), LIMIT_MAX_DIRECT_TERMS))

    n = np.arange(1, N + 1, dtype=float)
    with np.errstate(under="ignore"):
        direct = float(np.sum(np.exp(-n * b - c / n) * n**-1.5))

    def h(t: float) -> float:
        return math.exp(-t * b - c / t) * t**-1.5

    start = N + 0.5

    # The remaining terms are below e^{−700} of the first one.
    if b * start > 700:
        return direct

    tail = 0.0
    peak = max(start, 20 * c)
    if peak > start:
        tail += quad(h, start, peak, epsrel=1e-12)
    tail += quad(h, peak, math.inf, epsrel=1e-12)

    derivative = h(start) * (-b - 1.5 / start + c / start**2)

    return direct + tail + derivative / 24


def limit_kernel(
    thermo: ThermoParams,
    delta_inf: float,
    x: np.ndarray | tuple[float, ...],
    y: np.ndarray | tuple[float, ...],
) -> float:
    """
    The kernel K^{Δ∞}(x, y) of the infinite-volume gas with gap Δ∞ ≥ 0.
    """
    if delta_inf < 0:
        raise StabilityError(delta_inf)

    if math.isinf(delta_inf):
        return 0.0

    r2 = float(np.sum((np.asarray(x, dtype=float) - np.asarray(y, dtype=float)) ** 2))
    lam = thermo.thermal_wavelength

    b = thermo.beta * delta_inf
    c = math.pi * r2 / lam**2

    return gaussian_series(b, c) / lam**3


def limit_kernel_profile(thermo: ThermoParams, delta_inf: float, r: np.ndarray) -> np.ndarray:
    """
    K^{Δ∞} as a function of the separation |x − y|, for an array of
    separations.
    """
    origin = np.zeros(3)
    return np.array(
        [limit_kernel(thermo, delta_inf, origin, np.array([float(ri), 0.0, 0.0])) for ri in np.ravel(r)]
    ).reshape(np.shape(r))
