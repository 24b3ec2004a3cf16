"""Embedded HTTP service for simulations, periodic certification, and presets.

The simulation core is pure, so the service is stateless: identical requests
produce identical bodies.  A bounded semaphore caps concurrent integrations;
request bodies above 1 MB and horizons above 200 years are rejected before
any work starts.  Schema violations return 400 with the offending key path,
hypothesis failures return 422.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import ConfigError, HypothesisViolated, NoSignChange, StepUnderflow
from .integrate import DAILY
from .numutil import round_sig12
from .periodic import find_periodic
from .scenarios import PRESET_NAMES, preset, run_scenario, scenario_from_dict, scenario_to_dict

MAX_BODY_BYTES = 1_000_000
MAX_HORIZON_YEARS = 200.0
MAX_SAMPLES = 200_000


def _rounded(obj):
    """Recursively round floats to 12 significant digits for serialization."""
    if isinstance(obj, float):
        return round_sig12(obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def create_app(static_dir: str | Path | None = None, max_workers: int | None = None) -> FastAPI:
    app = FastAPI(title="harvestlab", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    gate = threading.BoundedSemaphore(max_workers or 4)

    @app.exception_handler(RequestValidationError)
    async def _on_validation(_req: Request, exc: RequestValidationError):
        detail = [
            {"loc": ".".join(str(p) for p in err.get("loc", [])), "msg": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(ConfigError)
    async def _on_config_error(_req: Request, exc: ConfigError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    for hyp in (HypothesisViolated, NoSignChange, StepUnderflow):
        @app.exception_handler(hyp)
        async def _on_hypothesis(_req: Request, exc: Exception):
            return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.middleware("http")
    async def _limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > MAX_BODY_BYTES:
            return JSONResponse(status_code=413,
                                content={"detail": f"request body exceeds {MAX_BODY_BYTES} bytes"})
        return await call_next(request)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/presets")
    def presets() -> dict:
        # Scenario documents round-trip exactly (no 12-digit rounding): a
        # client must be able to re-simulate precisely the scenario the CLI
        # ran.  Only result payloads carry display-precision numbers.
        return {
            "presets": [
                {"name": name, "scenarios": [scenario_to_dict(s) for s in preset(name)]}
                for name in PRESET_NAMES
            ]
        }

    @app.post("/api/simulate")
    def simulate(doc: dict, output_dt: float = Query(default=DAILY, gt=0.0)) -> dict:
        scenario = scenario_from_dict(doc)
        if scenario.horizon > MAX_HORIZON_YEARS:
            raise ConfigError(
                f"scenario.horizon: {scenario.horizon} exceeds the {MAX_HORIZON_YEARS:g}-year cap"
            )
        if scenario.horizon / output_dt > MAX_SAMPLES:
            raise ConfigError(
                f"output_dt: {output_dt} yields more than {MAX_SAMPLES} samples over the horizon"
            )
        with gate:
            traj, metrics = run_scenario(scenario)
        res = traj.resample(output_dt)
        samples = [
            {
                "t": round_sig12(float(res.t[i])),
                "N": round_sig12(float(res.n[i])),
                "K": round_sig12(float(res.k[i])),
                "r": round_sig12(float(res.r[i])),
                "effort": round_sig12(float(res.effort[i])),
                "harvest_rate": round_sig12(float(res.harvest[i])),
            }
            for i in range(len(res.t))
        ]
        events = [{"t": round_sig12(ev.t), "kind": ev.kind} for ev in traj.events]
        return {"samples": samples, "metrics": metrics.to_dict(), "events": events}

    @app.post("/api/periodic")
    def periodic(doc: dict) -> dict:
        scenario = scenario_from_dict(doc)
        with gate:
            cert = find_periodic(scenario.model())
        return _rounded({
            "v0_star": cert.v0_star,
            "n0_of_0": cert.n0_of_0,
            "residual": cert.residual,
            "gas_decay": cert.gas_decay,
            "bracket": {
                "b0": cert.bracket.b0,
                "upper": cert.bracket.upper,
                "grid_points": cert.bracket.grid_points,
                "grid_min": cert.bracket.grid_min,
            },
            "iterations": cert.iterations,
        })

    if static_dir is not None:
        static_path = Path(static_dir)
        if not static_path.is_dir():
            raise ValueError(f"static directory {static_path} does not exist")
        app.mount("/", StaticFiles(directory=static_path, html=True), name="static")

    return app


def serve(port: int, static_dir: str | Path | None = None, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(static_dir=static_dir), host=host, port=port, log_level="info")
