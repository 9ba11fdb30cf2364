"""Fixed-size dense linear algebra for 2x2 and 4x4 real matrices.

Everything here operates on plain float64 numpy arrays of fixed shape; the
problem size never varies, so there is no dynamic-dimension handling beyond
shape validation. All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

__all__ = [
    "J",
    "OMEGA",
    "HermitianCheck",
    "det2",
    "det4",
    "sym_eig4",
    "expm4",
    "solve16",
    "hermitian_min_eig",
]

# 2x2 symplectic form and its two-mode direct sum, ordering (x, p_x, y, p_y).
J = np.array([[0.0, 1.0], [-1.0, 0.0]])
J.setflags(write=False)

OMEGA = np.kron(np.eye(2), J)
OMEGA.setflags(write=False)

# exp(||m||) overflows float64 near 709; refuse well before that.
EXPM_NORM_LIMIT = 700.0
_EXPM_SERIES_TERMS = 16  # truncation error < 1e-19 once the argument is scaled to norm <= 1/2
_JACOBI_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 60


def _as_square(m, n: int, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.shape != (n, n):
        raise ValueError(f"{name} must have shape ({n}, {n}), got {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} has non-finite entries")
    return a


def det2(m) -> float:
    """Determinant of a 2x2 real matrix, ad - bc."""
    a = _as_square(m, 2)
    return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def _lu_decompose(a: np.ndarray) -> tuple[np.ndarray, list[int], float, float]:
    """In-place LU with partial pivoting.

    Returns (lu, row permutation, permutation sign, smallest |pivot|); a sign
    of 0.0 marks an exactly singular matrix.
    """
    n = a.shape[0]
    perm = list(range(n))
    sign = 1.0
    min_pivot = math.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[k], perm[p] = perm[p], perm[k]
            sign = -sign
        pivot = a[k, k]
        min_pivot = min(min_pivot, abs(pivot))
        if pivot == 0.0:
            return a, perm, 0.0, 0.0
        if k + 1 < n:
            a[k + 1 :, k] /= pivot
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return a, perm, sign, min_pivot


def det4(m) -> float:
    """Determinant of a 4x4 real matrix via LU with partial pivoting."""
    a = _as_square(m, 4)
    lu, _, sign, _ = _lu_decompose(a.copy())
    if sign == 0.0:
        return 0.0
    return float(sign * lu[0, 0] * lu[1, 1] * lu[2, 2] * lu[3, 3])


def _jacobi_eigh(
    a: np.ndarray, tol: float = _JACOBI_TOL, vectors: bool = True
) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic Jacobi eigensolver for a small real symmetric matrix.

    Returns eigenvalues ascending and (unless disabled) the matching
    orthonormal eigenvectors as columns. Sweeps until the off-diagonal
    Frobenius norm drops below tol relative to the input scale. The inner
    loops run over native floats: for these tiny sizes that is much faster
    than array slicing.
    """
    n = a.shape[0]
    m = [[float(a[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)] if vectors else None
    scale = max(1.0, math.sqrt(sum(m[i][j] ** 2 for i in range(n) for j in range(n))))
    threshold = tol * scale
    rng = range(n)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * sum(m[i][j] ** 2 for i in rng for j in range(i + 1, n)))
        if off <= threshold:
            break
        for p in range(n - 1):
            mp = m[p]
            for q in range(p + 1, n):
                mq = m[q]
                apq = mp[q]
                if abs(apq) <= 1e-300:
                    mp[q] = mq[p] = 0.0
                    continue
                theta = 0.5 * (mq[q] - mp[p]) / apq
                t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                tau = s / (1.0 + c)
                for i in rng:
                    if i == p or i == q:
                        continue
                    mi = m[i]
                    g = mi[p]
                    h = mi[q]
                    mi[p] = mp[i] = g - s * (h + tau * g)
                    mi[q] = mq[i] = h + s * (g - tau * h)
                mp[p] -= t * apq
                mq[q] += t * apq
                mp[q] = mq[p] = 0.0
                if v is not None:
                    for vi in v:
                        g = vi[p]
                        h = vi[q]
                        vi[p] = g - s * (h + tau * g)
                        vi[q] = h + s * (g - tau * h)
    else:
        raise NumericalError(f"Jacobi iteration did not converge in {_JACOBI_MAX_SWEEPS} sweeps")
    w = np.array([m[i][i] for i in rng])
    order = np.argsort(w, kind="stable")
    if v is None:
        return w[order], None
    return w[order], np.array(v)[:, order]


def sym_eig4(m, symmetry_tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a symmetric 4x4 matrix, ascending.

    The input is symmetrized before solving; asymmetry beyond symmetry_tol
    is rejected.
    """
    a = _as_square(m, 4)
    asym = float(np.max(np.abs(a - a.T)))
    if asym > symmetry_tol:
        raise ValueError(f"matrix asymmetry {asym:.3e} exceeds tolerance {symmetry_tol:.1e}")
    w, _ = _jacobi_eigh(0.5 * (a + a.T))
    return w


def expm4(m, method: str = "series-scaling-squaring") -> np.ndarray:
    """Matrix exponential of a 4x4 real matrix by scaling and squaring.

    The argument is halved until its infinity norm is <= 1/2, the truncated
    Taylor series is evaluated by Horner's scheme, and the result is squared
    back up. Norms beyond the overflow guard are refused.
    """
    if method != "series-scaling-squaring":
        raise ValueError(f"unknown expm4 method: {method!r}")
    a = _as_square(m, 4)
    norm = float(np.max(np.sum(np.abs(a), axis=1)))
    if norm > EXPM_NORM_LIMIT:
        raise NumericalError(
            f"matrix norm {norm:.3e} exceeds the exp overflow guard {EXPM_NORM_LIMIT:.0f}"
        )
    k = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    b = a / float(2**k)
    e = np.eye(4)
    for j in range(_EXPM_SERIES_TERMS, 0, -1):
        e = np.eye(4) + (b @ e) / j
    for _ in range(k):
        e = e @ e
    return e


def solve16(coeff, rhs) -> np.ndarray:
    """Solve a dense 16x16 real linear system by LU with partial pivoting.

    Raises NumericalError, naming the smallest pivot, when the coefficient
    matrix is singular or the solution fails the residual contract
    ||Ax - b|| <= 1e-10 ||b||.
    """
    a = _as_square(coeff, 16, "coefficient matrix")
    b = np.asarray(rhs, dtype=float)
    if b.shape != (16,):
        raise ValueError(f"rhs must be a 16-vector, got shape {b.shape}")
    if not np.isfinite(b).all():
        raise ValueError("rhs has non-finite entries")

    lu, perm, sign, min_pivot = _lu_decompose(a.copy())
    pivot_floor = 16.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(a))))
    if sign == 0.0 or min_pivot <= pivot_floor:
        raise NumericalError(
            f"singular 16x16 system: smallest pivot {min_pivot:.3e} "
            f"below floor {pivot_floor:.3e}"
        )
    x = b[perm].astype(float)
    for k in range(1, 16):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(15, -1, -1):
        x[k] = (x[k] - lu[k, k + 1 :] @ x[k + 1 :]) / lu[k, k]

    residual = float(np.max(np.abs(a @ x - b)))
    bound = 1e-10 * max(float(np.max(np.abs(b))), 1e-300)
    if not np.isfinite(x).all() or residual > bound:
        raise NumericalError(
            f"16x16 solve residual {residual:.3e} exceeds {bound:.3e} "
            f"(smallest pivot {min_pivot:.3e})"
        )
    return x


@dataclass(frozen=True)
class HermitianCheck:
    """Physicality certificate: smallest eigenvalue of a Hermitian test matrix."""

    min_eigenvalue: float
    tolerance: float

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -self.tolerance


def hermitian_min_eig(sym, antisym, tolerance: float = 1e-10) -> HermitianCheck:
    """Smallest eigenvalue of the Hermitian matrix S + iK, for real S, K.

    Reduces to the doubled real symmetric problem [[S, -K], [K, S]], whose
    spectrum is that of S + iK with each eigenvalue repeated twice.
    """
    n = np.asarray(sym).shape[0]
    s = _as_square(sym, n, "symmetric part")
    k = _as_square(antisym, n, "antisymmetric part")
    embedded = np.block([[s, -k], [k, s]])
    embedded = 0.5 * (embedded + embedded.T)
    w, _ = _jacobi_eigh(embedded, vectors=False)
    return HermitianCheck(min_eigenvalue=float(w[0]), tolerance=tolerance)
