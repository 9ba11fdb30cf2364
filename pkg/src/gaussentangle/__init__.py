"""Markovian covariance dynamics and entanglement of two bosonic modes in a
common thermal bath.

Core objects: PhysParams fixes (m, omega1, omega2, lam, T) in units
hbar = k = 1; CovarianceState wraps the 4x4 covariance matrix in ordering
(x, p_x, y, p_y); the dynamics module evolves states in closed form; the
entanglement module evaluates the Simon separability function,
logarithmic negativity and entanglement-sudden-death times.
"""

__version__ = "0.1.0"

from .errors import ConfigError, GaussEntangleError, NumericalError, PhysicsError
from .linalg import J, OMEGA, HermitianCheck, det2, det4, expm4, solve16, sym_eig4
from .model import (
    CPEntry,
    CPReport,
    EnvMatrices,
    PhysParams,
    build_drift,
    build_thermal_diffusion,
    coth_stable,
    thermal_coth,
    thermal_environment,
    validate_cp,
)
from .states import (
    BlockDecomp,
    CovarianceState,
    assemble,
    blocks,
    from_raw,
    single_mode_squeezed,
    two_mode_squeezed,
    uncertainty_residual,
)
from .dynamics import (
    Propagator,
    Trajectory,
    block_expm,
    propagate,
    propagator,
    rk4_oracle,
    rk4_samples,
    sample_trajectory,
    steady_state,
)
from .entanglement import (
    EsdResult,
    SimonValue,
    SymplecticSpectrum,
    asymptotic_log_negativity,
    asymptotic_simon,
    esd_time,
    is_entangled,
    log_negativity,
    simon_function,
    symplectic_spectrum_pt,
    symplectic_spectrum_pt_explicit,
)
from .config import ScenarioConfig, parse_config
from .sweep import (
    SweepRecord,
    SweepResult,
    run_asymptote,
    run_esd,
    run_evolve,
    run_sweep,
    run_validate,
)

__all__ = [
    "__version__",
    "GaussEntangleError",
    "ConfigError",
    "PhysicsError",
    "NumericalError",
    "J",
    "OMEGA",
    "HermitianCheck",
    "det2",
    "det4",
    "sym_eig4",
    "expm4",
    "solve16",
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
    "CovarianceState",
    "BlockDecomp",
    "single_mode_squeezed",
    "two_mode_squeezed",
    "from_raw",
    "blocks",
    "assemble",
    "uncertainty_residual",
    "Propagator",
    "Trajectory",
    "block_expm",
    "propagator",
    "steady_state",
    "propagate",
    "rk4_oracle",
    "rk4_samples",
    "sample_trajectory",
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
    "ScenarioConfig",
    "parse_config",
    "SweepRecord",
    "SweepResult",
    "run_sweep",
    "run_evolve",
    "run_esd",
    "run_asymptote",
    "run_validate",
]
