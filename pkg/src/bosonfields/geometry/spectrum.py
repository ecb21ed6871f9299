"""
Single-particle spectrum and eigenfunctions of −(ħ²/2m)Δ in a box.

Dirichlet:  ε_k = (ħ²/2m) Σ (π k_j / L_j)²,            k_j ≥ 1
            φ_k(x) = ∏ √(2/L_j) sin(π k_j/2 + π k_j x_j / L_j)

Periodic:   ε_k = (ħ²/2m) Σ (2π k_j / L_j)²,           k_j ∈ ℤ
            φ_k(x) = ∏ √(1/L_j) exp(2πi k_j (x_j + L_j/2) / L_j)

The sign convention for even Dirichlet modes is exactly the one above;
only |φ_k|² enters any density.

"""

from dataclasses import dataclass
import math
import typing

import numpy as np

from bosonfields.errors import DomainError, StabilityError
from .boxes import BoxGeometry, ThermoParams


Boundary = typing.Literal["dirichlet", "periodic"]


@dataclass(frozen=True, order=True)
class Mode:
    k1: int
    k2: int
    k3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)


GROUND_MODE = Mode(1, 1, 1)


def check_mode(mode: Mode, bc: Boundary) -> None:
    if bc == "dirichlet" and min(mode.as_tuple()) < 1:
        raise DomainError(f"Dirichlet modes need k_j ≥ 1, got {mode.as_tuple()}")


def ground_mode(bc: Boundary) -> Mode:
    return GROUND_MODE if bc == "dirichlet" else Mode(0, 0, 0)


def _wavenumbers(box: BoxGeometry, k: np.ndarray, bc: Boundary) -> np.ndarray:
    factor = math.pi if bc == "dirichlet" else 2 * math.pi
    return factor * k / np.array(box.lengths)


def mode_energies(
    box: BoxGeometry, modes: np.ndarray, bc: Boundary, thermo: ThermoParams
) -> np.ndarray:
    """
    Energies for an (n, 3) integer array of quantum numbers.
    """
    q = _wavenumbers(box, np.asarray(modes, dtype=float), bc)
    return thermo.kinetic_coefficient * np.sum(q**2, axis=-1)


def eigenvalue(
    box: BoxGeometry, mode: Mode, bc: Boundary, thermo: ThermoParams
) -> float:
    check_mode(mode, bc)
    return float(mode_energies(box, np.array([mode.as_tuple()]), bc, thermo)[0])


def axis_eigenfunction(
    L: float, k: np.ndarray, x: np.ndarray, bc: Boundary
) -> np.ndarray:
    """
    One-dimensional factors, broadcast over ``k`` and ``x``.
    """
    if bc == "dirichlet":
        return np.sqrt(2 / L) * np.sin(np.pi * k / 2 + np.pi * k * x / L)
    else:
        return np.sqrt(1 / L) * np.exp(2j * np.pi * k * (x + L / 2) / L)


def eigenfunction_values(
    box: BoxGeometry, modes: np.ndarray, bc: Boundary, points: np.ndarray
) -> np.ndarray:
    """
    Evaluate φ_k at every point: returns an array of shape
    (n_points, n_modes), real for Dirichlet and complex for periodic.

    This doesn't check the points lie in the box -- callers that take
    user input do that first.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ks = np.atleast_2d(np.asarray(modes))

    values = axis_eigenfunction(box.L1, ks[None, :, 0], pts[:, None, 0], bc)
    for j, L in ((1, box.L2), (2, box.L3)):
        values = values * axis_eigenfunction(L, ks[None, :, j], pts[:, None, j], bc)

    return values


def eigenfunction(
    box: BoxGeometry, mode: Mode, bc: Boundary, x: np.ndarray | tuple[float, ...]
) -> float | complex:
    check_mode(mode, bc)
    box.check_contains(x)
    value = eigenfunction_values(box, np.array([mode.as_tuple()]), bc, np.asarray(x))
    return value[0, 0].item()  # type: ignore[no-any-return]


def eigenfunction_sup(box: BoxGeometry, bc: Boundary) -> float:
    """
    sup_x |φ_k(x)|, which is the same for every mode.
    """
    if bc == "dirichlet":
        return math.sqrt(8 / box.volume)
    else:
        return math.sqrt(1 / box.volume)


def bose_factor(y: np.ndarray | float) -> np.ndarray:
    """
    1 / (e^y − 1) for y > 0, going smoothly to 0 for large y.
    """
    with np.errstate(over="ignore"):
        return 1.0 / np.expm1(np.asarray(y, dtype=float))


def occupation(
    box: BoxGeometry,
    mode: Mode,
    thermo: ThermoParams,
    delta: float,
    bc: Boundary = "dirichlet",
) -> float:
    """
    Mean occupation of a mode when μ = ε_ground − Δ:

        W(k, L, Δ) = 1 / (exp β[ε_k − ε_ground + Δ] − 1)

    """
    check_mode(mode, bc)

    ground = ground_mode(bc)
    excitation = eigenvalue(box, mode, bc, thermo) - eigenvalue(
        box, ground, bc, thermo
    )

    if mode == ground and delta <= 0:
        raise StabilityError(delta)

    exponent = thermo.beta * (excitation + delta)
    if exponent <= 0:
        raise StabilityError(delta)

    return float(bose_factor(exponent))
