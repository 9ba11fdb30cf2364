"""Independent oracles used by the tests.

Everything here is deliberately separate from the package implementation:
brute-force cofactor determinants, characteristic-polynomial eigenvalues,
high-precision special functions via mpmath, and generic numpy/scipy
routes to the same quantities the engine computes in closed form.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
import scipy.linalg

mp.mp.dps = 40

OMEGA = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def coth_mp(x: float) -> float:
    """High-precision coth through mpmath."""
    return float(mp.coth(mp.mpf(x)))


def thermal_coth_mp(omega: float, temperature: float) -> float:
    if temperature == 0.0:
        return 1.0
    return coth_mp(omega / (2.0 * temperature))


def det_cofactor(a: np.ndarray) -> float:
    """Brute-force determinant by recursive cofactor expansion."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * det_cofactor(minor)
    return total


def charpoly_eigvals_sym(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric 4x4 matrix as roots of its characteristic
    polynomial (Faddeev-LeVerrier coefficients + numpy root finder)."""
    a = np.asarray(a, dtype=float)
    # p(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 from trace powers
    t1 = np.trace(a)
    a2 = a @ a
    t2 = np.trace(a2)
    t3 = np.trace(a2 @ a)
    t4 = np.trace(a2 @ a2)
    c3 = -t1
    c2 = 0.5 * (t1**2 - t2)
    c1 = -(t1**3 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0
    c0 = (t1**4 - 6.0 * t1**2 * t2 + 3.0 * t2**2 + 8.0 * t1 * t3 - 6.0 * t4) / 24.0
    roots = np.roots([1.0, c3, c2, c1, c0])
    return np.sort(roots.real)


def pt_symplectic_spectrum(sigma: np.ndarray) -> tuple[float, float]:
    """Symplectic spectrum of the partial transpose via a generic
    nonsymmetric eigensolve of Omega sigma~."""
    pt = np.asarray(sigma, dtype=float).copy()
    pt[3, :] *= -1.0
    pt[:, 3] *= -1.0
    eigs = np.linalg.eigvals(OMEGA @ pt)
    nus = np.sort(np.abs(eigs.imag))  # each nu appears twice
    return float(0.5 * (nus[0] + nus[1])), float(0.5 * (nus[2] + nus[3]))


def min_eig_uncertainty(sigma: np.ndarray) -> float:
    """Smallest eigenvalue of sigma + (i/2) Omega via the complex Hermitian
    LAPACK route."""
    h = np.asarray(sigma, dtype=complex) + 0.5j * OMEGA
    return float(np.linalg.eigvalsh(h)[0])


def simon_via_det_identity(sigma: np.ndarray) -> float:
    """Simon function through the determinant identity
    S = 1/16 - |det C|/2 + det sigma - (det A + det B)/4."""
    s = np.asarray(sigma, dtype=float)
    det_a = np.linalg.det(s[:2, :2])
    det_b = np.linalg.det(s[2:, 2:])
    det_c = np.linalg.det(s[:2, 2:])
    return float(1.0 / 16.0 - abs(det_c) / 2.0 + np.linalg.det(s) - (det_a + det_b) / 4.0)


def thermal_sigma_inf(m: float, omega1: float, omega2: float, temperature: float) -> np.ndarray:
    """Closed-form asymptotic covariance of the thermal bath."""
    c1 = thermal_coth_mp(omega1, temperature)
    c2 = thermal_coth_mp(omega2, temperature)
    return np.diag(
        [
            c1 / (2.0 * m * omega1),
            0.5 * c1 * m * omega1,
            c2 / (2.0 * m * omega2),
            0.5 * c2 * m * omega2,
        ]
    )


def simon_mp(m: float, omega1: float, omega2: float, lam: float, temperature: float,
             sigma0: np.ndarray, t: float, dps: int | None = None) -> float:
    """Simon function of the propagated state in high-precision arithmetic.

    Evaluates the exact solution sigma(t) = M (sigma0 - sigma_inf) M^T +
    sigma_inf entirely in mpmath, then the Simon expression. Slow; used to
    settle signs where float64 has hit its noise floor. The working
    precision scales with the decay exponent so the ~e^{-4 lam t} tail of S
    stays resolvable at any horizon.
    """
    if dps is None:
        dps = max(40, int(4.0 * lam * t * 0.4343) + 25)
    with mp.workdps(dps):
        return _simon_mp_impl(m, omega1, omega2, lam, temperature, sigma0, t)


def _simon_mp_impl(m, omega1, omega2, lam, temperature, sigma0, t) -> float:
    mm, w1, w2 = mp.mpf(m), mp.mpf(omega1), mp.mpf(omega2)
    lam_mp, t_mp = mp.mpf(lam), mp.mpf(t)

    def mode_block(w):
        c, s = mp.cos(w * t_mp), mp.sin(w * t_mp)
        decay = mp.e ** (-lam_mp * t_mp)
        return mp.matrix([[decay * c, decay * s / (mm * w)],
                          [-decay * mm * w * s, decay * c]])

    prop = mp.zeros(4, 4)
    for offset, w in ((0, w1), (2, w2)):
        block = mode_block(w)
        for i in range(2):
            for j in range(2):
                prop[offset + i, offset + j] = block[i, j]

    def coth_factor(w):
        if temperature == 0.0:
            return mp.mpf(1)
        return mp.coth(w / (2 * mp.mpf(temperature)))

    sigma_inf = mp.zeros(4, 4)
    for offset, w in ((0, w1), (2, w2)):
        c = coth_factor(w)
        sigma_inf[offset, offset] = c / (2 * mm * w)
        sigma_inf[offset + 1, offset + 1] = c * mm * w / 2

    sigma0_mp = mp.matrix(4, 4)
    for i in range(4):
        for j in range(4):
            sigma0_mp[i, j] = mp.mpf(float(sigma0[i, j]))

    delta = sigma0_mp - sigma_inf
    sigma_t = prop * delta * prop.T + sigma_inf

    def det2_mp(a, r0, c0):
        return a[r0, c0] * a[r0 + 1, c0 + 1] - a[r0, c0 + 1] * a[r0 + 1, c0]

    det_a = det2_mp(sigma_t, 0, 0)
    det_b = det2_mp(sigma_t, 2, 2)
    det_c = det2_mp(sigma_t, 0, 2)
    det_sigma = mp.det(sigma_t)
    # determinant identity: S = 1/16 - |det C|/2 + det sigma - (det A + det B)/4
    value = mp.mpf(1) / 16 - abs(det_c) / 2 + det_sigma - (det_a + det_b) / 4
    return float(value)


def random_symplectic(rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
    """Random symplectic matrix exp(Omega H) with H symmetric."""
    h = rng.normal(scale=scale, size=(4, 4))
    h = 0.5 * (h + h.T)
    return scipy.linalg.expm(OMEGA @ h)


def random_physical_sigma(rng: np.random.Generator, mixed: bool = True) -> np.ndarray:
    """Random physical covariance matrix S diag(nu1, nu1, nu2, nu2) S^T with
    symplectic S and nu_i >= 1/2."""
    s = random_symplectic(rng)
    if mixed:
        nu1, nu2 = 0.5 + rng.uniform(0.0, 2.0, size=2)
    else:
        nu1 = nu2 = 0.5
    core = np.diag([nu1, nu1, nu2, nu2])
    sigma = s @ core @ s.T
    return 0.5 * (sigma + sigma.T)
