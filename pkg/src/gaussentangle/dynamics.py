"""Time evolution of the covariance matrix.

The flow d sigma/dt = Y sigma + sigma Y^T + 2D has the closed-form solution
sigma(t) = M(t) [sigma(0) - sigma(inf)] M(t)^T + sigma(inf) with
M(t) = exp(Y t), and sigma(inf) solving the steady-state Lyapunov equation
Y sigma + sigma Y^T = -2D. The propagator is evaluated from the exact
per-mode expression; a fixed-step RK4 integrator of the same ODE is kept
as an independent verification route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .linalg import solve16
from .model import PhysParams, build_thermal_diffusion, build_drift
from .states import CovarianceState

__all__ = [
    "TRAJECTORY_TOL",
    "Propagator",
    "Trajectory",
    "block_expm",
    "propagator",
    "steady_state",
    "propagate",
    "rk4_oracle",
    "rk4_samples",
    "sample_trajectory",
]

# Propagated samples may drift slightly below the exact uncertainty bound;
# they are certified against a looser tolerance than freshly built states.
TRAJECTORY_TOL = 1e-8
_LYAPUNOV_RESIDUAL_TOL = 1e-10
_MAX_RK4_STEPS = 10_000_000


def block_expm(p: PhysParams, t: float) -> np.ndarray:
    """Propagator exp(Y t) in closed form.

    Each mode contributes e^{-lam t} [[cos wt, sin(wt)/(m w)],
    [-m w sin wt, cos wt]]; the two blocks sit on the diagonal.
    """
    if not t >= 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    decay = math.exp(-p.lam * t)
    out = np.zeros((4, 4))
    for offset, omega in ((0, p.omega1), (2, p.omega2)):
        c = math.cos(omega * t)
        s = math.sin(omega * t)
        out[offset, offset] = decay * c
        out[offset, offset + 1] = decay * s / (p.m * omega)
        out[offset + 1, offset] = -decay * p.m * omega * s
        out[offset + 1, offset + 1] = decay * c
    return out


@dataclass(frozen=True)
class Propagator:
    """The propagator matrix exp(Y t) at a fixed time."""

    t: float
    matrix: np.ndarray


def propagator(p: PhysParams, t: float) -> Propagator:
    return Propagator(t=t, matrix=block_expm(p, t))


def steady_state(drift, diffusion) -> np.ndarray:
    """Asymptotic covariance: solve Y sigma + sigma Y^T = -2D.

    Vectorized to the 16x16 system (Y (x) I + I (x) Y) vec(sigma) = -2 vec(D)
    and solved by LU; requires the drift spectrum in the open left half-plane,
    otherwise the system is singular (for example lam = 0).
    """
    y = np.asarray(drift, dtype=float)
    d = np.asarray(diffusion, dtype=float)
    if y.shape != (4, 4) or d.shape != (4, 4):
        raise ValueError("drift and diffusion must be 4x4")
    if np.max(np.abs(d - d.T)) > 1e-12:
        raise ValueError("diffusion matrix must be symmetric")
    d = 0.5 * (d + d.T)

    eye = np.eye(4)
    coeff = np.kron(y, eye) + np.kron(eye, y)
    sigma = solve16(coeff, (-2.0 * d).reshape(16))
    sigma = sigma.reshape(4, 4)
    sigma = 0.5 * (sigma + sigma.T)

    residual = float(np.max(np.abs(y @ sigma + sigma @ y.T + 2.0 * d)))
    if residual > _LYAPUNOV_RESIDUAL_TOL:
        raise NumericalError(f"steady-state residual {residual:.3e} exceeds "
                             f"{_LYAPUNOV_RESIDUAL_TOL:.1e}")
    return sigma


def _propagate_sigma(sigma0: np.ndarray, sigma_inf: np.ndarray, p: PhysParams,
                     t: float) -> np.ndarray:
    m = block_expm(p, t)
    sigma = m @ (sigma0 - sigma_inf) @ m.T + sigma_inf
    return 0.5 * (sigma + sigma.T)


def propagate(s0: CovarianceState, p: PhysParams, t: float) -> CovarianceState:
    """Evolve a state for time t under the thermal environment of p."""
    sigma_inf = steady_state(build_drift(p), build_thermal_diffusion(p))
    return CovarianceState(_propagate_sigma(s0.sigma, sigma_inf, p, t))


def _rk4_rhs(sigma: np.ndarray, y: np.ndarray, yt: np.ndarray, d2: np.ndarray) -> np.ndarray:
    return y @ sigma + sigma @ yt + d2


def _rk4_advance(sigma: np.ndarray, y: np.ndarray, yt: np.ndarray, d2: np.ndarray,
                 h: float, steps: int) -> np.ndarray:
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(steps):
        k1 = _rk4_rhs(sigma, y, yt, d2)
        k2 = _rk4_rhs(sigma + half * k1, y, yt, d2)
        k3 = _rk4_rhs(sigma + half * k2, y, yt, d2)
        k4 = _rk4_rhs(sigma + h * k3, y, yt, d2)
        sigma = sigma + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        sigma = 0.5 * (sigma + sigma.T)
    return sigma


def _step_count(span: float, dt: float) -> int:
    steps = max(1, round(span / dt))
    if steps > _MAX_RK4_STEPS:
        raise NumericalError(f"RK4 step count {steps} exceeds the {_MAX_RK4_STEPS} limit")
    return steps


def rk4_oracle(s0: CovarianceState, drift, diffusion, t: float, dt: float) -> np.ndarray:
    """Integrate d sigma/dt = Y sigma + sigma Y^T + 2D by classical RK4.

    Fixed step of size ~dt (rounded so the horizon is hit exactly); global
    error O(dt^4). Independent of the closed-form propagation path.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    if not t >= 0.0:
        raise ValueError("time must be nonnegative")
    y = np.asarray(drift, dtype=float)
    d = np.asarray(diffusion, dtype=float)
    sigma = s0.sigma.copy()
    if t == 0.0:
        return sigma
    steps = _step_count(t, dt)
    return _rk4_advance(sigma, y, y.T.copy(), 2.0 * d, t / steps, steps)


def rk4_samples(sigma0, drift, diffusion, times, dt: float) -> list[np.ndarray]:
    """RK4 trajectory sampled at the given ascending times (one integration pass)."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    y = np.asarray(drift, dtype=float)
    yt = y.T.copy()
    d2 = 2.0 * np.asarray(diffusion, dtype=float)
    sigma = np.asarray(sigma0, dtype=float).copy()
    out = []
    prev = 0.0
    for t in times:
        if t < prev:
            raise ValueError("sample times must be ascending and nonnegative")
        span = t - prev
        if span > 0.0:
            steps = _step_count(span, dt)
            sigma = _rk4_advance(sigma, y, yt, d2, span / steps, steps)
        out.append(sigma.copy())
        prev = t
    return out


@dataclass(frozen=True)
class Trajectory:
    """Covariance samples along a time grid, with the generating parameters
    and the asymptotic covariance they relax toward."""

    times: tuple[float, ...]
    states: tuple[CovarianceState, ...]
    params: PhysParams
    sigma_inf: np.ndarray

    def __iter__(self):
        return iter(zip(self.times, self.states))

    def __len__(self) -> int:
        return len(self.times)


def sample_trajectory(s0: CovarianceState, p: PhysParams, t_grid) -> Trajectory:
    """Closed-form evolution sampled on an ascending nonnegative grid.

    The steady state is solved once and reused; every sample is certified
    physical within the trajectory tolerance.
    """
    grid = [float(t) for t in t_grid]
    if len(grid) == 0:
        raise ValueError("time grid must be nonempty")
    if grid[0] < 0.0 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("time grid must be strictly increasing and nonnegative")

    sigma_inf = steady_state(build_drift(p), build_thermal_diffusion(p))
    states = []
    for t in grid:
        state = CovarianceState(_propagate_sigma(s0.sigma, sigma_inf, p, t))
        if state.residual < -TRAJECTORY_TOL:
            raise NumericalError(
                f"propagated state at t={t:g} violates the uncertainty relation: "
                f"residual {state.residual:.3e}"
            )
        states.append(state)
    return Trajectory(times=tuple(grid), states=tuple(states), params=p, sigma_inf=sigma_inf)
