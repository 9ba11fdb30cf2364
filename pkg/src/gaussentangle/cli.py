"""Command-line front end.

Subcommands: evolve, sweep, esd, asymptote, validate, serve. By default the
engine runs in-process; with --server URL every computation is delegated to
a running service instance and only parsing/formatting happens locally.

Exit codes: 0 success, 2 config error, 3 physics/validation error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ScenarioConfig, load_config
from .errors import ConfigError, NumericalError, PhysicsError
from .sweep import (
    RK4_CHECK_TOL,
    SweepRecord,
    format_csv,
    format_report,
    run_asymptote,
    run_esd,
    run_evolve,
    run_sweep,
    run_validate,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_NUMERICAL = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussentangle",
        description="Entanglement dynamics of two bosonic modes in a thermal bath",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="path to a JSON scenario document")
        p.add_argument("--out", help="output path (default: config output.path or stdout)")
        p.add_argument("--server", help="base URL of a running service; delegate the run there")
        p.add_argument("--t-max", type=float, help="override the time horizon")
        p.add_argument("--steps", type=int, help="override the number of grid points")
        p.add_argument("--temps", help="override T_list, comma-separated (e.g. 0,0.5,1)")
        p.add_argument("--dt", type=float, help="override the RK4 check step size")

    p_evolve = sub.add_parser("evolve", help="single-temperature trajectory (CSV)")
    add_common(p_evolve)
    p_evolve.add_argument("--rk4-check", action="store_true", default=None,
                          help="cross-check the closed form against RK4")

    p_sweep = sub.add_parser("sweep", help="t x T surface of S and E_N (CSV)")
    add_common(p_sweep)
    p_sweep.add_argument("--rk4-check", action="store_true", default=None,
                         help="cross-check the closed form against RK4")

    p_esd = sub.add_parser("esd", help="entanglement-sudden-death times per T (JSON)")
    add_common(p_esd)
    p_esd.add_argument("--tol", type=float, default=1e-6, help="bisection bracket width")

    p_asym = sub.add_parser("asymptote", help="steady-state covariances and asymptotic "
                                              "S, E_N per T (JSON)")
    add_common(p_asym)

    p_val = sub.add_parser("validate", help="complete-positivity report for the thermal "
                                            "diffusion (JSON)")
    add_common(p_val)
    p_val.add_argument("--strict", action="store_true",
                       help="additionally require the full noise-coefficient matrix PSD")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _load_document(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc.msg} "
                          f"(line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object")
    return document


def _apply_overrides(document: dict, args: argparse.Namespace) -> dict:
    if args.t_max is not None:
        document["t_max"] = args.t_max
    if args.steps is not None:
        document["steps"] = args.steps
    if args.temps is not None:
        try:
            document["T_list"] = [float(part) for part in args.temps.split(",") if part != ""]
        except ValueError as exc:
            raise ConfigError(f"--temps must be comma-separated numbers: {args.temps!r}") from exc
    if args.dt is not None:
        document["dt"] = args.dt
    if getattr(args, "rk4_check", None):
        document["rk4_check"] = True
    return document


def _write_output(text: str, args: argparse.Namespace, cfg: ScenarioConfig) -> None:
    path = args.out
    if path is None and cfg.output is not None:
        path = cfg.output.path
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _post_scenario(server: str, endpoint: str, document: dict, params: dict | None = None) -> dict:
    import httpx

    url = server.rstrip("/") + endpoint
    try:
        response = httpx.post(url, json=document, params=params, timeout=600.0)
    except httpx.HTTPError as exc:
        raise ConfigError(f"cannot reach service at {server}: {exc}") from exc
    if response.status_code == 200:
        return response.json()
    try:
        body = response.json()
    except ValueError:
        body = {}
    detail = body.get("detail", response.text)
    error_class = body.get("error_class")
    if error_class == "physics":
        raise PhysicsError(f"service: {detail}")
    if error_class == "numerical":
        raise NumericalError(f"service: {detail}")
    raise ConfigError(f"service rejected the request ({response.status_code}): {detail}")


def _records_from_payload(payload: dict) -> list[SweepRecord]:
    return [SweepRecord(**entry) for entry in payload["records"]]


def _check_rk4(rk4_max: float | None) -> None:
    if rk4_max is None:
        return
    sys.stdout.write(f"rk4_check: max |S_closed - S_rk4| = {rk4_max:.6e}\n")
    if not rk4_max <= RK4_CHECK_TOL:  # catches NaN from a diverged integration
        raise NumericalError(
            f"closed-form/RK4 disagreement {rk4_max:.6e} exceeds {RK4_CHECK_TOL:.1e}"
        )


def _run_records_command(args: argparse.Namespace, endpoint: str) -> int:
    document = _apply_overrides(_load_document(args.config), args)
    cfg = load_config(document)
    if args.server:
        payload = _post_scenario(args.server, endpoint, document)
        records = _records_from_payload(payload)
        rk4_max = payload.get("rk4_max_s_diff")
    else:
        result = run_evolve(cfg) if endpoint == "/evolve" else run_sweep(cfg)
        records = list(result.records)
        rk4_max = result.rk4_max_s_diff
    _check_rk4(rk4_max)
    _write_output(format_csv(records), args, cfg)
    return EXIT_OK


def _run_report_command(args: argparse.Namespace, endpoint: str) -> int:
    document = _apply_overrides(_load_document(args.config), args)
    cfg = load_config(document)
    if args.server:
        params: dict = {}
        if endpoint == "/esd":
            params["tol"] = args.tol
        if endpoint == "/validate" and args.strict:
            params["strict"] = True
        report = _post_scenario(args.server, endpoint, document, params=params or None)
    elif endpoint == "/esd":
        report = run_esd(cfg, tol=args.tol)
    elif endpoint == "/asymptote":
        report = run_asymptote(cfg)
    else:
        report = run_validate(cfg, strict=args.strict)
    _write_output(format_report(report), args, cfg)
    if endpoint == "/validate" and not report["all_passed"]:
        sys.stderr.write("complete-positivity constraints violated\n")
        return EXIT_PHYSICS
    return EXIT_OK


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("gaussentangle.service:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return _serve(args)
        if args.command in ("evolve", "sweep"):
            return _run_records_command(args, f"/{args.command}")
        return _run_report_command(args, f"/{args.command}")
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except PhysicsError as exc:
        sys.stderr.write(f"physics error: {exc}\n")
        return EXIT_PHYSICS
    except NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
