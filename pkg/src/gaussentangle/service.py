"""HTTP service wrapping the simulation engine.

Every endpoint takes the same scenario document the CLI consumes and
returns structured JSON; the CLI renders CSV/JSON text from these payloads
client-side, so service and in-process runs produce identical files.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .config import ScenarioConfig
from .errors import ConfigError, NumericalError, PhysicsError
from .sweep import run_asymptote, run_esd, run_evolve, run_sweep, run_validate

__all__ = ["create_app", "app"]


class HealthResponse(BaseModel):
    status: str
    version: str


class SweepRecordModel(BaseModel):
    t: float
    T: float
    S: float
    nu_minus: float
    E_N: float
    uncertainty_residual: float
    is_entangled: bool


class SweepResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_version: int = Field(default=1, alias="schema")
    records: list[SweepRecordModel]
    rk4_max_s_diff: float | None = None


class EsdResultModel(BaseModel):
    T: float
    esd_time: float | None
    bracket: list[float] | None
    iterations: int
    crossings: list[float]


class EsdResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_version: int = Field(default=1, alias="schema")
    scenario: dict
    tol: float
    results: list[EsdResultModel]


class AsymptoteResultModel(BaseModel):
    T: float
    sigma_xx: float
    sigma_pxpx: float
    sigma_yy: float
    sigma_pypy: float
    max_off_diagonal: float
    S_inf: float
    E_N_inf: float
    separable: bool


class AsymptoteResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_version: int = Field(default=1, alias="schema")
    scenario: dict
    results: list[AsymptoteResultModel]


class CPInequalityModel(BaseModel):
    name: str
    residual: float
    passed: bool


class ValidateResultModel(BaseModel):
    T: float
    inequalities: list[CPInequalityModel]
    passed: bool
    strict_min_eigenvalue: float | None = None


class ValidateResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_version: int = Field(default=1, alias="schema")
    scenario: dict
    strict: bool
    all_passed: bool
    results: list[ValidateResultModel]


def _error_response(status: int, error_class: str, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"detail": str(exc), "error_class": error_class})


def create_app() -> FastAPI:
    app = FastAPI(
        title="gaussentangle",
        version=__version__,
        description="Covariance-matrix dynamics and entanglement of two bosonic "
                    "modes in a common thermal bath",
    )

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return _error_response(422, "config", exc)

    @app.exception_handler(PhysicsError)
    async def _physics_error(request: Request, exc: PhysicsError):
        return _error_response(400, "physics", exc)

    @app.exception_handler(NumericalError)
    async def _numerical_error(request: Request, exc: NumericalError):
        return _error_response(500, "numerical", exc)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(cfg: ScenarioConfig) -> SweepResponse:
        result = run_sweep(cfg)
        return SweepResponse(
            records=[SweepRecordModel(**vars(r)) for r in result.records],
            rk4_max_s_diff=result.rk4_max_s_diff,
        )

    @app.post("/evolve", response_model=SweepResponse)
    def evolve(cfg: ScenarioConfig) -> SweepResponse:
        result = run_evolve(cfg)
        return SweepResponse(
            records=[SweepRecordModel(**vars(r)) for r in result.records],
            rk4_max_s_diff=result.rk4_max_s_diff,
        )

    @app.post("/esd", response_model=EsdResponse)
    def esd(cfg: ScenarioConfig, tol: float = 1e-6) -> EsdResponse:
        return EsdResponse(**run_esd(cfg, tol=tol))

    @app.post("/asymptote", response_model=AsymptoteResponse)
    def asymptote(cfg: ScenarioConfig) -> AsymptoteResponse:
        return AsymptoteResponse(**run_asymptote(cfg))

    @app.post("/validate", response_model=ValidateResponse)
    def validate(cfg: ScenarioConfig, strict: bool = False) -> ValidateResponse:
        return ValidateResponse(**run_validate(cfg, strict=strict))

    return app


app = create_app()
