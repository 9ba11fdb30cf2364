"""Scenario configuration: a single versioned JSON document.

The same pydantic model validates config files fed to the CLI and request
bodies posted to the HTTP service. Unknown keys are rejected; m defaults
to 1 and temperatures are swept from T_list.
"""

from __future__ import annotations

import json
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError
from .model import PhysParams
from .states import CovarianceState, from_raw, single_mode_squeezed, two_mode_squeezed

__all__ = [
    "SingleModeSqueezedSpec",
    "TwoModeSqueezedSpec",
    "CustomStateSpec",
    "OutputSpec",
    "ScenarioConfig",
    "parse_config",
    "load_config",
    "initial_state",
    "phys_params",
    "time_grid",
]

SCHEMA_VERSION = 1

_FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]


class SingleModeSqueezedSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    type: Literal["single_mode_squeezed"]
    r: _FiniteFloat


class TwoModeSqueezedSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    type: Literal["two_mode_squeezed"]
    r: _FiniteFloat


class CustomStateSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    type: Literal["custom"]
    sigma: list[_FiniteFloat] = Field(min_length=16, max_length=16,
                                      description="row-major 4x4 covariance matrix")


InitialStateSpec = Annotated[
    Union[SingleModeSqueezedSpec, TwoModeSqueezedSpec, CustomStateSpec],
    Field(discriminator="type"),
]


class OutputSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    path: str | None = None
    format: Literal["csv", "json"] = "csv"


class ScenarioConfig(BaseModel):
    """One simulation scenario: physics parameters, initial state, time grid,
    temperature list and output options."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    lam: Annotated[float, Field(gt=0, allow_inf_nan=False, alias="lambda")]
    omega1: Annotated[float, Field(gt=0, allow_inf_nan=False)]
    omega2: Annotated[float, Field(gt=0, allow_inf_nan=False)]
    m: Annotated[float, Field(gt=0, allow_inf_nan=False)] = 1.0
    state: InitialStateSpec
    t_max: Annotated[float, Field(gt=0, allow_inf_nan=False)]
    steps: Annotated[int, Field(ge=1, le=1_000_000)]
    T_list: list[Annotated[float, Field(ge=0, allow_inf_nan=False)]] = Field(min_length=1)
    rk4_check: bool = False
    dt: Annotated[float, Field(gt=0, allow_inf_nan=False)] = 1e-3
    output: OutputSpec | None = None

    @field_validator("T_list")
    @classmethod
    def _temperatures_finite(cls, v: list[float]) -> list[float]:
        if any(not np.isfinite(t) for t in v):
            raise ValueError("temperatures must be finite")
        return v


def _format_validation_error(exc: ValidationError) -> str:
    lines = []
    for err in exc.errors():
        loc = ".".join(str(part) for part in err["loc"]) or "<root>"
        lines.append(f"  {loc}: {err['msg']}")
    return "invalid scenario config:\n" + "\n".join(lines)


def load_config(document: dict) -> ScenarioConfig:
    """Validate an already-parsed config mapping."""
    try:
        cfg = ScenarioConfig.model_validate(document)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc
    # Reject unphysical custom states eagerly so a bad config never reaches
    # the engine; raises PhysicsError carrying the uncertainty residual.
    initial_state(cfg)
    return cfg


def parse_config(text: str) -> ScenarioConfig:
    """Parse and fully validate a JSON scenario document."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc.msg} "
                          f"(line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object")
    return load_config(document)


def initial_state(cfg: ScenarioConfig) -> CovarianceState:
    """Build the configured initial state (custom matrices are certified)."""
    spec = cfg.state
    if spec.type == "single_mode_squeezed":
        return single_mode_squeezed(spec.r)
    if spec.type == "two_mode_squeezed":
        return two_mode_squeezed(spec.r)
    return from_raw(np.asarray(spec.sigma, dtype=float).reshape(4, 4))


def phys_params(cfg: ScenarioConfig, temperature: float) -> PhysParams:
    return PhysParams(m=cfg.m, omega1=cfg.omega1, omega2=cfg.omega2, lam=cfg.lam,
                      T=temperature)


def time_grid(cfg: ScenarioConfig) -> np.ndarray:
    """Uniform grid: cfg.steps points from 0 to t_max inclusive."""
    if cfg.steps == 1:
        return np.array([0.0])
    return np.linspace(0.0, cfg.t_max, cfg.steps)
