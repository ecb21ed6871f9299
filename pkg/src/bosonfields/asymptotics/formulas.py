"""
The lattice sums behind the finite-size estimates, their predicted
leading terms and their envelopes.

Write g(X) = 1/(e^X − 1) and E(s) = A(s² − 1)/L².  Then

    A1   Σ_{s∈ℕ², s≠(1,1)} L⁻² g(E(s₁) + E(s₂) + B)  = π/4A · log(L² ∧ B⁻¹) + O(1)
    A2   the same over odd s₁, s₂                  = π/16A · log(L² ∧ B⁻¹) + O(1)
    A3   Σ_{s odd} L⁻¹ g(E(s) + B)                 = L/A · φ(L²B/A) + O(1)
    A7   Σ_{s∈ℕ², s≠(1,1)} (L₁L₂)⁻¹ g(A(s₁²−1)/L₁² + A(s₂²−1)/L₂² + B)
                                                  = O(L₁/L₂ ∧ 1/(L₂√B)) + O(log(L₂ ∧ B^{−1/2}))
    A8   Σ_{s∈ℕ²} L⁻² (|s|²/L²) g(E(s₁) + E(s₂) + B)       = O(1) + O(L⁻⁴B⁻¹)
    A9   Σ_{s∈ℕ²} L⁻² (|s|²/L²)^{1/4} g(E(s₁) + E(s₂) + B) = O(1) + O(L^{−5/2}B⁻¹)
    A10  Σ_{s∈ℕ} L⁻¹ (s²/L²) g(E(s) + B)                  = O(1) + O(L^{−5/2}B⁻¹)
    A11  Σ_{s≥2} L⁻¹ g(E(s) + B)                          = O(L ∧ B^{−1/2})

and, for X > 0,

    A12  0 ≤ 1/X − 1/(e^X − 1) ≤ ½ ∧ 1/X

For A7 we take L₁ = L², L₂ = L, the BEAM with γ = 2.

The s = (1,1) term of A9 is 2^{1/4}L^{−5/2}B⁻¹, so its nominal envelope
O(1) + O(L⁻⁴B⁻¹) can't hold once B ≪ L⁻⁴; we check the L^{−5/2}B⁻¹
envelope and report the nominal one.  Likewise 1/X − 1/(e^X − 1) → ½
as X → 0, so the nominal bound X ∧ 1/X fails for small X.

"""

from collections.abc import Callable
import math
import typing

import numpy as np

from bosonfields.errors import ConfigurationError, FloatRangeError
from bosonfields.thermo import phi, phi_tail
from bosonfields.types import FormulaId
from .cases import AsymptoticCase


# Summands with X > X_CUTOFF are below e^{−60} of the largest ones,
# which is beyond double precision, so we drop them.
X_CUTOFF = 60.0

MAX_TERMS = 10**9

CHUNK_ELEMENTS = 2**20


Kind = typing.Literal["bounded", "envelope", "inequality"]

KINDS: dict[FormulaId, Kind] = {
    "A1": "bounded",
    "A2": "bounded",
    "A3": "bounded",
    "A7": "envelope",
    "A8": "envelope",
    "A9": "envelope",
    "A10": "envelope",
    "A11": "envelope",
    "A12": "inequality",
}

DOUBLE_SUMS = {"A1", "A2", "A7", "A8", "A9"}

Order = typing.Literal["rows", "columns"]


def bose(x: np.ndarray) -> np.ndarray:
    """
    g(X) = 1/(e^X − 1)
    """
    return 1 / np.expm1(x)  # type: ignore[no-any-return]


def leading_coefficient(case: AsymptoticCase) -> float:
    """
    The coefficient of the leading term of a "bounded" formula: the
    residual's log-slope is compared against this.
    """
    if case.formula == "A1":
        return math.pi / (4 * case.A)
    elif case.formula == "A2":
        return math.pi / (16 * case.A)
    elif case.formula == "A3":
        return 1 / case.A
    else:
        raise ConfigurationError(f"{case.formula} has no leading term")


def _check_B(case: AsymptoticCase, L: float) -> float:
    B = case.B(L)
    if L > case.schedule.max_L or not (B > 0) or math.isinf(B):
        raise FloatRangeError(quantity="B(L)", L=L, max_L=case.schedule.max_L)
    return B


def _cutoff(A: float, L: float, B: float) -> int:
    """
    The largest s with A(s² − 1)/L² + B ≤ X_CUTOFF, and at least 1.
    """
    if B >= X_CUTOFF:
        return 1
    return max(1, int(math.floor(math.sqrt((X_CUTOFF - B) * L**2 / A + 1))))


def _single_sum(term: Callable[[np.ndarray], np.ndarray], s: np.ndarray) -> float:
    return math.fsum(
        float(np.sum(term(s[start : start + CHUNK_ELEMENTS])))
        for start in range(0, len(s), CHUNK_ELEMENTS)
    )


def _double_sum(
    term: Callable[[np.ndarray, np.ndarray], np.ndarray],
    s1: np.ndarray,
    s2: np.ndarray,
    *,
    exclude_ground: bool,
    order: Order,
) -> float:
    """
    Σ_{i,j} term(s1[i], s2[j]), summing each row (or column) first.
    """
    if len(s1) * len(s2) > MAX_TERMS:
        raise ConfigurationError(
            f"The sum has {len(s1) * len(s2):.3g} terms; use a smaller L grid"
        )

    outer, inner = (s1, s2) if order == "rows" else (s2, s1)
    block_size = max(1, CHUNK_ELEMENTS // len(inner))

    partials: list[float] = []

    for start in range(0, len(outer), block_size):
        block = outer[start : start + block_size]

        if order == "rows":
            a, b = block[:, None], inner[None, :]
        else:
            a, b = inner[None, :], block[:, None]

        values = term(a, b)
        if exclude_ground:
            values = np.where((a == 1) & (b == 1), 0.0, values)

        partials.extend(np.sum(values, axis=1).tolist())

    return math.fsum(partials)


def _modes(A: float, L: float, B: float, *, odd: bool = False, start: int = 1) -> np.ndarray:
    top = _cutoff(A, L, B)
    if odd:
        return np.arange(1, top + 1, 2, dtype=float)
    return np.arange(start, max(top, start) + 1, dtype=float)


def lhs(case: AsymptoticCase, L: float, *, order: Order = "rows") -> float:
    """
    The left-hand side of the formula at L (at X, for A12), summed
    directly up to X_CUTOFF.
    """
    if case.formula == "A12":
        return float(a12_gap(np.array([L]))[0])

    A = case.A
    B = _check_B(case, L)

    def energy(s: np.ndarray, side: float = L) -> np.ndarray:
        return A * (s**2 - 1) / side**2  # type: ignore[no-any-return]

    if case.formula in ("A1", "A2"):
        s = _modes(A, L, B, odd=case.formula == "A2")
        return _double_sum(
            lambda a, b: bose(energy(a) + energy(b) + B) / L**2,
            s,
            s,
            exclude_ground=True,
            order=order,
        )

    if case.formula == "A3":
        s = _modes(A, L, B, odd=True)
        return _single_sum(lambda a: bose(energy(a) + B) / L, s)

    if case.formula == "A7":
        L1, L2 = L**2, L
        s1 = _modes(A, L1, B)
        s2 = _modes(A, L2, B)
        return _double_sum(
            lambda a, b: bose(energy(a, L1) + energy(b, L2) + B) / (L1 * L2),
            s1,
            s2,
            exclude_ground=True,
            order=order,
        )

    if case.formula in ("A8", "A9"):
        power = 1.0 if case.formula == "A8" else 0.25
        s = _modes(A, L, B)
        return _double_sum(
            lambda a, b: ((a**2 + b**2) / L**2) ** power
            * bose(energy(a) + energy(b) + B)
            / L**2,
            s,
            s,
            exclude_ground=False,
            order=order,
        )

    if case.formula == "A10":
        s = _modes(A, L, B)
        return _single_sum(lambda a: (a**2 / L**2) * bose(energy(a) + B) / L, s)

    if case.formula == "A11":
        s = _modes(A, L, B, start=2)
        return _single_sum(lambda a: bose(energy(a) + B) / L, s)

    raise ConfigurationError(f"Unknown formula {case.formula!r}")


def leading(case: AsymptoticCase, L: float) -> float:
    """
    The predicted leading term of a "bounded" formula.
    """
    B = _check_B(case, L)

    if case.formula in ("A1", "A2"):
        return leading_coefficient(case) * math.log(min(L**2, 1 / B))
    elif case.formula == "A3":
        return L / case.A * phi(L**2 * B / case.A)
    else:
        raise ConfigurationError(f"{case.formula} has no leading term")


def residual(case: AsymptoticCase, L: float) -> float:
    """
    lhs − leading.

    For A3 both sides grow like L/A·φ, so we subtract termwise, as
    Σ_s L⁻¹(g(X_s) − 1/X_s), and add back the tail of φ's series.
    """
    if case.formula != "A3":
        return lhs(case, L) - leading(case, L)

    A = case.A
    B = _check_B(case, L)
    s = _modes(A, L, B, odd=True)

    def term(a: np.ndarray) -> np.ndarray:
        X = A * (a**2 - 1) / L**2 + B
        return (bose(X) - 1 / X) / L  # type: ignore[no-any-return]

    return _single_sum(term, s) - L / A * phi_tail(L**2 * B / A, len(s))


def envelope(case: AsymptoticCase, L: float) -> float:
    """
    The envelope of an "envelope" formula, without its unknown
    constants.
    """
    B = _check_B(case, L)

    if case.formula == "A7":
        return min(L, 1 / (L * math.sqrt(B))) + math.log(min(L, B**-0.5))
    elif case.formula == "A8":
        return 1 + 1 / (L**4 * B)
    elif case.formula in ("A9", "A10"):
        return 1 + 1 / (L**2.5 * B)
    elif case.formula == "A11":
        return min(L, B**-0.5)
    else:
        raise ConfigurationError(f"{case.formula} has no envelope")


def nominal_envelope(case: AsymptoticCase, L: float) -> float | None:
    """
    The envelope usually quoted for this sum, where it differs from the one we check.
    """
    if case.formula == "A9":
        return 1 + 1 / (L**4 * case.B(L))
    return None


def a12_gap(X: np.ndarray) -> np.ndarray:
    """
    1/X − 1/(e^X − 1), with a series below X = 10⁻³ to avoid
    cancellation.
    """
    X = np.asarray(X, dtype=float)
    result = np.empty_like(X)

    small = X < 1e-3
    xs = X[small]
    result[small] = 0.5 - xs / 12 + xs**3 / 720

    xl = X[~small]
    with np.errstate(over="ignore"):
        result[~small] = 1 / xl - 1 / np.expm1(xl)

    return result


def a12_upper_bound(X: np.ndarray) -> np.ndarray:
    return np.minimum(0.5, 1 / np.asarray(X, dtype=float))  # type: ignore[no-any-return]


def a12_nominal_bound(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return np.minimum(X, 1 / X)  # type: ignore[no-any-return]
