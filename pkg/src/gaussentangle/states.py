"""Two-mode Gaussian covariance states and their physicality certification.

A state is a symmetric positive 4x4 covariance matrix in the canonical
ordering (x, p_x, y, p_y), with vacuum normalized to sigma = I/2. A matrix
is physical when sigma + (i/2) Omega is positive semi-definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicsError
from .linalg import OMEGA, hermitian_min_eig

__all__ = [
    "PHYSICAL_TOL",
    "CovarianceState",
    "BlockDecomp",
    "single_mode_squeezed",
    "two_mode_squeezed",
    "from_raw",
    "blocks",
    "assemble",
    "uncertainty_residual",
]

# Constructor states saturate the uncertainty bound exactly, so a little
# slack below zero is required for the certification to accept them.
PHYSICAL_TOL = 1e-10
_SYMMETRY_TOL = 1e-9


def uncertainty_residual(sigma) -> float:
    """Smallest eigenvalue of sigma + (i/2) Omega.

    Computed through the equivalent real symmetric 8x8 problem
    [[sigma, -Omega/2], [Omega/2, sigma]]; nonnegative (within tolerance)
    exactly when sigma is a physical covariance matrix.
    """
    s = np.asarray(sigma, dtype=float)
    check = hermitian_min_eig(0.5 * (s + s.T), 0.5 * OMEGA, tolerance=PHYSICAL_TOL)
    return check.min_eigenvalue


class CovarianceState:
    """Validated two-mode Gaussian state: the covariance matrix plus its
    physicality residual (computed lazily and cached)."""

    __slots__ = ("sigma", "_residual")

    def __init__(self, sigma: np.ndarray, residual: float | None = None):
        s = np.array(sigma, dtype=float)
        if s.shape != (4, 4):
            raise ValueError(f"covariance matrix must be 4x4, got {s.shape}")
        if not np.isfinite(s).all():
            raise ValueError("covariance matrix has non-finite entries")
        s = 0.5 * (s + s.T)
        s.setflags(write=False)
        self.sigma = s
        self._residual = residual

    @property
    def residual(self) -> float:
        """Physicality residual: min eig of sigma + (i/2) Omega."""
        if self._residual is None:
            self._residual = uncertainty_residual(self.sigma)
        return self._residual

    def __repr__(self) -> str:
        return f"CovarianceState(sigma=\n{self.sigma!r})"


@dataclass(frozen=True)
class BlockDecomp:
    """2x2 blocks of the covariance matrix: per-mode A and B, cross block C."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray


def blocks(state: CovarianceState) -> BlockDecomp:
    """Extract the A, B, C blocks of sigma = [[A, C], [C^T, B]]."""
    s = state.sigma
    return BlockDecomp(a=s[:2, :2].copy(), b=s[2:, 2:].copy(), c=s[:2, 2:].copy())


def assemble(decomp: BlockDecomp) -> np.ndarray:
    """Reassemble a covariance matrix from its block decomposition."""
    s = np.empty((4, 4))
    s[:2, :2] = decomp.a
    s[2:, 2:] = decomp.b
    s[:2, 2:] = decomp.c
    s[2:, :2] = decomp.c.T
    return s


def single_mode_squeezed(r: float) -> CovarianceState:
    """Product of two identically squeezed single-mode states (separable).

    sigma(0) = (1/2) blockdiag([[cosh r, sinh r], [sinh r, cosh r]], same);
    the cross block is zero.
    """
    if not math.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    ch, sh = 0.5 * math.cosh(r), 0.5 * math.sinh(r)
    block = np.array([[ch, sh], [sh, ch]])
    sigma = np.zeros((4, 4))
    sigma[:2, :2] = block
    sigma[2:, 2:] = block
    return CovarianceState(sigma)


def two_mode_squeezed(r: float) -> CovarianceState:
    """Two-mode squeezed vacuum (entangled for r != 0).

    A = B = (cosh r / 2) I and C = (sinh r / 2) diag(1, -1), i.e. x-x
    correlations positive and p-p correlations negative.
    """
    if not math.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    ch, sh = 0.5 * math.cosh(r), 0.5 * math.sinh(r)
    sigma = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return CovarianceState(sigma)


def from_raw(sigma) -> CovarianceState:
    """Build a state from a raw 4x4 matrix, certifying physicality.

    The input is symmetrized (asymmetry beyond 1e-9 is rejected) and must
    satisfy the uncertainty relation within -1e-10; the rejection carries
    the offending residual.
    """
    s = np.asarray(sigma, dtype=float)
    if s.shape != (4, 4):
        raise ValueError(f"covariance matrix must be 4x4, got {s.shape}")
    if not np.isfinite(s).all():
        raise ValueError("covariance matrix has non-finite entries")
    asym = float(np.max(np.abs(s - s.T)))
    if asym > _SYMMETRY_TOL:
        raise PhysicsError(f"covariance matrix asymmetry {asym:.3e} exceeds {_SYMMETRY_TOL:.1e}")
    s = 0.5 * (s + s.T)
    residual = uncertainty_residual(s)
    if residual < -PHYSICAL_TOL:
        raise PhysicsError(
            f"covariance matrix violates the uncertainty relation: "
            f"min eig of sigma + (i/2)Omega is {residual:.6e}",
            residual=residual,
        )
    return CovarianceState(s, residual=residual)
