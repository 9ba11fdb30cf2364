"""Physical parameterization of two oscillators coupled to a thermal bath.

Builds the drift matrix of the second-moment flow and the diagonal thermal
diffusion matrix, and checks the complete-positivity constraints that any
admissible diffusion matrix must satisfy. Natural units hbar = k = 1
throughout; the canonical ordering is (x, p_x, y, p_y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import OMEGA, HermitianCheck, hermitian_min_eig

__all__ = [
    "PhysParams",
    "EnvMatrices",
    "CPEntry",
    "CPReport",
    "build_drift",
    "coth_stable",
    "thermal_coth",
    "build_thermal_diffusion",
    "thermal_environment",
    "validate_cp",
]

CP_TOL = 1e-12


@dataclass(frozen=True)
class PhysParams:
    """Oscillator and bath parameters: mass, the two mode frequencies,
    dissipation constant and bath temperature."""

    m: float
    omega1: float
    omega2: float
    lam: float
    T: float

    def __post_init__(self):
        values = (self.m, self.omega1, self.omega2, self.lam, self.T)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("parameters must be finite")
        for name in ("m", "omega1", "omega2", "lam"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.T < 0.0:
            raise ValueError("T must be nonnegative")


def coth_stable(x: float) -> float:
    """coth(x) for x > 0, accurate over the whole positive axis.

    Uses 1 + 2/(e^{2x} - 1) in the bulk, the Laurent series near zero, and
    1 + 2 e^{-2x} once the correction is below roundoff, so no branch can
    overflow or lose digits.
    """
    if not x > 0.0:
        raise ValueError(f"coth_stable requires x > 0, got {x}")
    if x >= 20.0:
        return 1.0 + 2.0 * math.exp(-2.0 * x)
    if x >= 1e-2:
        return 1.0 + 2.0 / math.expm1(2.0 * x)
    return 1.0 / x + x / 3.0 - x**3 / 45.0


def thermal_coth(omega: float, T: float) -> float:
    """coth(omega / 2T) with the T = 0 limit handled exactly as 1."""
    if T == 0.0:
        return 1.0
    return coth_stable(omega / (2.0 * T))


def build_drift(p: PhysParams) -> np.ndarray:
    """Drift matrix of the covariance flow, block-diagonal over the two modes.

    Each 2x2 block is [[-lam, 1/m], [-m w_i^2, -lam]]; both eigenvalue pairs
    are -lam +- i w_i, so the flow is contracting for lam > 0.
    """
    y = np.zeros((4, 4))
    y[0, 0] = y[1, 1] = y[2, 2] = y[3, 3] = -p.lam
    y[0, 1] = y[2, 3] = 1.0 / p.m
    y[1, 0] = -p.m * p.omega1**2
    y[3, 2] = -p.m * p.omega2**2
    return y


def build_thermal_diffusion(p: PhysParams) -> np.ndarray:
    """Diagonal diffusion matrix of a bath driving both modes to thermal
    equilibrium: m w D_xx = D_pp / (m w) = (lam/2) coth(w / 2T) per mode,
    with every cross coefficient exactly zero."""
    c1 = thermal_coth(p.omega1, p.T)
    c2 = thermal_coth(p.omega2, p.T)
    half_lam = 0.5 * p.lam
    return np.diag(
        [
            half_lam * c1 / (p.m * p.omega1),
            half_lam * c1 * p.m * p.omega1,
            half_lam * c2 / (p.m * p.omega2),
            half_lam * c2 * p.m * p.omega2,
        ]
    )


def _validate_drift(y: np.ndarray, lam: float) -> None:
    off_blocks = (y[0, 2], y[0, 3], y[1, 2], y[1, 3], y[2, 0], y[2, 1], y[3, 0], y[3, 1])
    if any(v != 0.0 for v in off_blocks):
        raise ValueError("drift matrix must be block-diagonal over the two modes")
    if not np.allclose(np.diag(y), -lam, rtol=0.0, atol=1e-12):
        raise ValueError("drift diagonal must equal -lam")
    if not (y[0, 1] > 0.0 and y[2, 3] > 0.0 and y[1, 0] < 0.0 and y[3, 2] < 0.0):
        raise ValueError("drift off-diagonal pattern must be (+1/m, -m w^2) per mode")


@dataclass(frozen=True)
class EnvMatrices:
    """Drift and diffusion pair defining one environment, plus the dissipation
    constant entering the complete-positivity constraints."""

    drift: np.ndarray
    diffusion: np.ndarray
    lam: float

    def __post_init__(self):
        y = np.asarray(self.drift, dtype=float)
        d = np.asarray(self.diffusion, dtype=float)
        if y.shape != (4, 4) or d.shape != (4, 4):
            raise ValueError("drift and diffusion must be 4x4")
        if not (np.isfinite(y).all() and np.isfinite(d).all()):
            raise ValueError("drift and diffusion must be finite")
        if not self.lam > 0.0:
            raise ValueError("lam must be strictly positive")
        if np.max(np.abs(d - d.T)) > 1e-12:
            raise ValueError("diffusion matrix must be symmetric")
        _validate_drift(y, self.lam)
        d = 0.5 * (d + d.T)
        y.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "drift", y)
        object.__setattr__(self, "diffusion", d)


def thermal_environment(p: PhysParams) -> EnvMatrices:
    """Drift and thermal diffusion for the given parameters."""
    return EnvMatrices(drift=build_drift(p), diffusion=build_thermal_diffusion(p), lam=p.lam)


@dataclass(frozen=True)
class CPEntry:
    """One complete-positivity inequality: its name, residual lhs - rhs, and verdict."""

    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class CPReport:
    """Outcome of the complete-positivity constraints on a diffusion matrix."""

    entries: tuple[CPEntry, ...]
    strict_check: HermitianCheck | None
    tolerance: float

    @property
    def passed(self) -> bool:
        ok = all(e.passed for e in self.entries)
        if self.strict_check is not None:
            ok = ok and self.strict_check.passed
        return ok


def validate_cp(diffusion, lam: float, strict: bool = False, tol: float = CP_TOL) -> CPReport:
    """Check the six pairwise Cauchy-Schwarz constraints on a diffusion matrix.

    Each entry records the residual lhs - rhs of one inequality; violations
    are reported as data, never raised. With strict=True the full 4x4
    noise-coefficient matrix (sign-flipped D plus the antisymmetric lam/2
    part) is additionally required to be positive semi-definite.
    """
    d = np.asarray(diffusion, dtype=float)
    if d.shape != (4, 4):
        raise ValueError("diffusion matrix must be 4x4")
    if np.max(np.abs(d - d.T)) > 1e-12:
        raise ValueError("diffusion matrix must be symmetric")
    d = 0.5 * (d + d.T)

    quarter = 0.25 * lam * lam
    dxx, dxpx, dxy, dxpy = d[0, 0], d[0, 1], d[0, 2], d[0, 3]
    dpxpx, dypx, dpxpy = d[1, 1], d[1, 2], d[1, 3]
    dyy, dypy = d[2, 2], d[2, 3]
    dpypy = d[3, 3]
    residuals = (
        ("D_xx*D_pxpx - D_xpx^2 - lam^2/4", dxx * dpxpx - dxpx**2 - quarter),
        ("D_yy*D_pypy - D_ypy^2 - lam^2/4", dyy * dpypy - dypy**2 - quarter),
        ("D_xx*D_yy - D_xy^2", dxx * dyy - dxy**2),
        ("D_pxpx*D_pypy - D_pxpy^2", dpxpx * dpypy - dpxpy**2),
        ("D_xx*D_pypy - D_xpy^2", dxx * dpypy - dxpy**2),
        ("D_yy*D_pxpx - D_ypx^2", dyy * dpxpx - dypx**2),
    )
    entries = tuple(
        CPEntry(name=name, residual=float(r), passed=bool(r >= -tol)) for name, r in residuals
    )

    strict_check = None
    if strict:
        # The noise-coefficient matrix has real part P D P with P = diag(1,-1,1,-1)
        # and antisymmetric imaginary part -(lam/2) Omega.
        signs = np.diag([1.0, -1.0, 1.0, -1.0])
        strict_check = hermitian_min_eig(signs @ d @ signs, -0.5 * lam * OMEGA, tolerance=tol)

    return CPReport(entries=entries, strict_check=strict_check, tolerance=tol)
