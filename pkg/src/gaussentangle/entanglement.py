"""Entanglement quantification for two-mode Gaussian states.

Everything is driven by the partial transpose at covariance level
(p_y -> -p_y): the Simon separability function S (separable iff S >= 0),
the symplectic spectrum of the transposed matrix, the logarithmic
negativity E_N = -log2(2 nu_minus), thermal-equilibrium asymptotics in
closed form, and detection of the time at which an initially entangled
state turns separable (entanglement sudden death).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PhysicsError
from .linalg import J, OMEGA, det2, det4, _jacobi_eigh
from .model import PhysParams, thermal_coth, build_drift, build_thermal_diffusion
from .states import CovarianceState
from .dynamics import steady_state, _propagate_sigma

__all__ = [
    "SimonValue",
    "SymplecticSpectrum",
    "EsdResult",
    "simon_function",
    "symplectic_spectrum_pt",
    "symplectic_spectrum_pt_explicit",
    "log_negativity",
    "is_entangled",
    "asymptotic_simon",
    "asymptotic_log_negativity",
    "esd_time",
]

_DISCRIMINANT_TOL = 1e-12


@dataclass(frozen=True)
class SimonValue:
    """Simon separability function together with the invariants it is
    built from: S = detA detB + (1/4 - |detC|)^2 - Tr[A J C J B J C^T J]
    - (detA + detB)/4."""

    value: float
    det_a: float
    det_b: float
    det_c: float
    trace_term: float

    @property
    def separable(self) -> bool:
        return self.value >= 0.0


def _simon_terms(sigma: np.ndarray) -> SimonValue:
    a = sigma[:2, :2]
    b = sigma[2:, 2:]
    c = sigma[:2, 2:]
    det_a = det2(a)
    det_b = det2(b)
    det_c = det2(c)
    trace_term = float(np.trace(a @ J @ c @ J @ b @ J @ c.T @ J))
    value = (
        det_a * det_b
        + (0.25 - abs(det_c)) ** 2
        - trace_term
        - 0.25 * (det_a + det_b)
    )
    return SimonValue(
        value=float(value), det_a=det_a, det_b=det_b, det_c=det_c, trace_term=trace_term
    )


def simon_function(state: CovarianceState) -> SimonValue:
    """Evaluate the Simon PPT function; the state is separable iff S >= 0."""
    return _simon_terms(state.sigma)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of the partially transposed covariance matrix,
    with the invariants that determine them: 2 nu^2 = seralian -+
    sqrt(seralian^2 - 4 det sigma)."""

    nu_minus: float
    nu_plus: float
    seralian: float
    det_sigma: float


def symplectic_spectrum_pt(state: CovarianceState) -> SymplecticSpectrum:
    """Partial-transpose symplectic spectrum from the seralian invariant.

    seralian = detA + detB - 2 detC (partial transposition flips the sign
    of detC). Raises when the discriminant is negative beyond tolerance,
    which signals an unphysical input.
    """
    sigma = state.sigma
    det_a = det2(sigma[:2, :2])
    det_b = det2(sigma[2:, 2:])
    det_c = det2(sigma[:2, 2:])
    seralian = det_a + det_b - 2.0 * det_c
    det_sigma = det4(sigma)

    disc = seralian * seralian - 4.0 * det_sigma
    if disc < 0.0:
        if disc < -_DISCRIMINANT_TOL:
            raise NumericalError(
                f"inconsistent symplectic invariants: discriminant {disc:.6e} "
                f"below -{_DISCRIMINANT_TOL:.1e} (unphysical input)"
            )
        disc = 0.0
    root = math.sqrt(disc)

    def nu_from(half_sq: float) -> float:
        if half_sq < 0.0:
            if half_sq < -_DISCRIMINANT_TOL:
                raise NumericalError(
                    f"negative squared symplectic eigenvalue {half_sq:.6e} (unphysical input)"
                )
            half_sq = 0.0
        return math.sqrt(0.5 * half_sq)

    return SymplecticSpectrum(
        nu_minus=nu_from(seralian - root),
        nu_plus=nu_from(seralian + root),
        seralian=float(seralian),
        det_sigma=float(det_sigma),
    )


def symplectic_spectrum_pt_explicit(state: CovarianceState) -> tuple[float, float]:
    """Independent route to the same spectrum: transpose explicitly, then
    diagonalize.

    Negates the p_y row and column, takes the symmetric square root of the
    result, and reads the spectrum of i Omega sigma~ off the real 8x8
    embedding of the equivalent Hermitian matrix i R Omega R. Used to
    cross-check the seralian formula.
    """
    pt = state.sigma.copy()
    pt[3, :] *= -1.0
    pt[:, 3] *= -1.0
    w, v = _jacobi_eigh(pt)
    if w[0] <= 0.0:
        raise PhysicsError(
            f"partially transposed matrix is not positive definite (min eig {w[0]:.3e})"
        )
    root = v @ np.diag(np.sqrt(w)) @ v.T
    anti = root @ OMEGA @ root
    anti = 0.5 * (anti - anti.T)
    zero = np.zeros((4, 4))
    embedded = np.block([[zero, -anti], [anti, zero]])
    ew, _ = _jacobi_eigh(embedded)  # {-nu+, -nu+, -nu-, -nu-, nu-, nu-, nu+, nu+}
    nu_minus = 0.5 * float(ew[4] + ew[5])
    nu_plus = 0.5 * float(ew[6] + ew[7])
    return nu_minus, nu_plus


def log_negativity(state: CovarianceState) -> float:
    """Logarithmic negativity E_N = -log2(2 nu_minus).

    Positive values quantify entanglement; the value is returned unclamped,
    so separable states yield E_N <= 0 (distance from the boundary).
    """
    nu_minus = symplectic_spectrum_pt(state).nu_minus
    if nu_minus == 0.0:
        raise NumericalError("smallest symplectic eigenvalue is zero: negativity diverges")
    return -math.log2(2.0 * nu_minus)


def is_entangled(state: CovarianceState) -> bool:
    """Convenience predicate: E_N > 0."""
    return log_negativity(state) > 0.0


def asymptotic_simon(p: PhysParams) -> float:
    """Closed-form S of the thermal equilibrium state:
    (1/16) (coth^2(w1/2T) - 1) (coth^2(w2/2T) - 1); zero at T = 0 and
    nonnegative for all T, so the equilibrium is always separable."""
    c1 = thermal_coth(p.omega1, p.T)
    c2 = thermal_coth(p.omega2, p.T)
    return (c1 * c1 - 1.0) * (c2 * c2 - 1.0) / 16.0


def asymptotic_log_negativity(p: PhysParams) -> float:
    """Closed-form E_N of the thermal equilibrium state:
    -log2 coth(w/2T) for the larger of the two frequencies; depends only on
    the temperature and is <= 0, zero exactly at T = 0."""
    omega = max(p.omega1, p.omega2)
    c = thermal_coth(omega, p.T)
    if c == 1.0:
        return 0.0  # avoid -0.0 at T = 0
    return -math.log2(c)


@dataclass(frozen=True)
class EsdResult:
    """First time at which the Simon function of an initially entangled
    state crosses from negative to nonnegative, if any."""

    time: float | None
    bracket: tuple[float, float] | None
    iterations: int
    crossings: tuple[float, ...]


def esd_time(
    s0: CovarianceState,
    p: PhysParams,
    t_max: float,
    tol: float = 1e-6,
    grid_points: int = 2000,
    noise_floor: float = 1e-12,
) -> EsdResult:
    """Locate entanglement sudden death by scanning S(t) and bisecting.

    Scans a uniform grid on [0, t_max], refines every definite sign change
    of S(t) by bisection to a bracket of width <= tol, and reports the
    first negative-to-nonnegative crossing (time = bracket midpoint).
    Returns an absent time when S stays negative on the whole horizon.
    Requires an initially entangled state, S(0) < 0.

    A crossing only counts when S moves between values beyond
    +-noise_floor: S is a difference of comparable fourth-order products,
    so once the exact value decays toward zero (as it does for all times
    at T = 0) the computed one jitters at the roundoff scale, and raw sign
    changes there are meaningless.

    All refined crossing times (either direction) are listed in
    ``crossings``, so possible revivals are visible to the caller.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if not t_max > 0.0:
        raise ValueError("t_max must be positive")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    if not noise_floor > 0.0:
        raise ValueError("noise_floor must be positive")

    sigma_inf = steady_state(build_drift(p), build_thermal_diffusion(p))
    sigma0 = s0.sigma

    def s_of(t: float) -> float:
        return _simon_terms(_propagate_sigma(sigma0, sigma_inf, p, t)).value

    s_start = s_of(0.0)
    if not s_start < 0.0:
        raise PhysicsError(
            f"initial state is separable (S(0) = {s_start:.6e}); "
            "entanglement sudden death is undefined"
        )

    grid = np.linspace(0.0, t_max, grid_points)
    values = [s_start] + [s_of(float(t)) for t in grid[1:]]
    definite = [
        (i, -1 if v < 0.0 else 1) for i, v in enumerate(values) if abs(v) >= noise_floor
    ]

    def bisect(lo: float, hi: float, lo_negative: bool) -> tuple[float, tuple[float, float], int]:
        iterations = 0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if (s_of(mid) < 0.0) == lo_negative:
                lo = mid
            else:
                hi = mid
            iterations += 1
        return 0.5 * (lo + hi), (lo, hi), iterations

    crossings: list[float] = []
    first_death: tuple[float, tuple[float, float], int] | None = None
    for (i, sign_i), (j, sign_j) in zip(definite, definite[1:]):
        if sign_i == sign_j:
            continue
        t_cross, bracket, iterations = bisect(float(grid[i]), float(grid[j]), sign_i < 0)
        crossings.append(t_cross)
        if sign_i < 0 and first_death is None:
            first_death = (t_cross, bracket, iterations)

    if first_death is None:
        return EsdResult(time=None, bracket=None, iterations=0, crossings=tuple(crossings))
    time, bracket, iterations = first_death
    return EsdResult(time=time, bracket=bracket, iterations=iterations, crossings=tuple(crossings))
