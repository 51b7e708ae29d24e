"""HTTP JSON service exposing scenario execution to the web UI."""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .dataio import route_to_dict
from .errors import EfleetError, NoRouteError, UnknownCityError
from .network import k_fastest_routes
from .reporting import render_report, result_to_dict
from .scenario import run_scenario
from .workflow import Region, load_region, scenario_from_region


@dataclass
class JobRecord:
    job_id: str
    status: str  # queued | running | done | failed
    submitted_at: str
    result_path: Optional[str] = None
    error: Optional[str] = None


class ScenarioRequest(BaseModel, extra="forbid"):
    cities: list[str] = Field(min_length=2)
    bev_fraction: float = Field(default=1.0, ge=0.0, le=1.0)
    k_routes: int = Field(default=3, ge=1, le=5)
    spacing_km: float = Field(default=50.0, gt=0.0)
    sweep_steps: int = Field(default=11, ge=2)


class JobStore:
    """Thread-safe in-memory job registry with per-job results."""

    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict[str, JobRecord] = {}
        self._results: dict[str, dict] = {}

    def create(self) -> JobRecord:
        record = JobRecord(job_id=uuid.uuid4().hex, status="queued",
                          submitted_at=datetime.now(timezone.utc).isoformat())
        with self._lock:
            self._jobs[record.job_id] = record
        return record

    def get(self, job_id: str) -> Optional[JobRecord]:
        with self._lock:
            return self._jobs.get(job_id)

    def set_running(self, job_id: str):
        with self._lock:
            self._jobs[job_id].status = "running"

    def set_done(self, job_id: str, payload: dict, result_path: str):
        with self._lock:
            self._jobs[job_id].status = "done"
            self._jobs[job_id].result_path = result_path
            self._results[job_id] = payload

    def set_failed(self, job_id: str, error: str):
        with self._lock:
            self._jobs[job_id].status = "failed"
            self._jobs[job_id].error = error

    def result(self, job_id: str) -> Optional[dict]:
        with self._lock:
            return self._results.get(job_id)


def result_payload(result) -> dict:
    """Full result JSON served to clients, choropleth included."""
    payload = result_to_dict(result)
    counties = sorted(set(result.energy_by_county) |
                      set(result.emission_reduction_by_county))
    payload["choropleth"] = {
        county: {
            "energy_kwh": result.energy_by_county.get(county, 0.0),
            "reduction_kgco2": result.emission_reduction_by_county.get(county, 0.0),
        }
        for county in counties
    }
    return payload


def create_app(data_dir: str | Path, out_dir: str | Path | None = None,
               job_workers: int = 1, ui_dir: str | Path | None = None) -> FastAPI:
    """Build the service around one region directory (scenario.toml inside)."""
    data_dir = Path(data_dir)
    region: Region = load_region(data_dir / "scenario.toml")
    out_root = Path(out_dir) if out_dir is not None else data_dir / "jobs"
    store = JobStore()
    executor = ThreadPoolExecutor(max_workers=job_workers)

    app = FastAPI(title="efleet scenario service")
    app.state.region = region
    app.state.jobs = store

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/api/region")
    def get_region():
        nodes = region.graph.nodes.values()
        return {
            "name": region.name,
            "cities": sorted(region.graph.city_index),
            "counties": sorted({n.county for n in nodes}),
            "utilities": sorted({n.utility_id for n in nodes}),
        }

    @app.get("/api/routes")
    def get_routes(origin: str, destination: str, k: int = 3, spacing_km: float = 50.0):
        try:
            routes = k_fastest_routes(region.graph, origin, destination,
                                      k=k, spacing_km=spacing_km)
        except UnknownCityError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except NoRouteError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return [route_to_dict(r) for r in routes]

    def execute(job_id: str, request: ScenarioRequest):
        store.set_running(job_id)
        try:
            scenario = scenario_from_region(
                region, cities=tuple(request.cities),
                bev_fraction=request.bev_fraction, k_routes=request.k_routes,
                spacing_km=request.spacing_km)
            result = run_scenario(scenario, sweep_steps=request.sweep_steps)
            payload = result_payload(result)
            job_dir = out_root / job_id
            job_dir.mkdir(parents=True, exist_ok=True)
            render_report(result, job_dir)
            result_path = job_dir / "result.json"
            result_path.write_text(json.dumps(payload, indent=2) + "\n",
                                   encoding="utf-8")
            store.set_done(job_id, payload, str(result_path))
        except EfleetError as exc:
            store.set_failed(job_id, str(exc))
        except Exception as exc:  # noqa: BLE001 - job must record any failure
            store.set_failed(job_id, f"internal error: {exc}")

    @app.post("/api/scenario")
    def post_scenario(request: ScenarioRequest):
        known = set(region.graph.city_index)
        unknown = [c for c in request.cities if c not in known]
        if unknown:
            raise HTTPException(status_code=400,
                                detail=f"unknown cities: {', '.join(sorted(unknown))}")
        if len(set(request.cities)) < 2:
            raise HTTPException(status_code=400, detail="need at least 2 distinct cities")
        record = store.create()
        executor.submit(execute, record.job_id, request)
        return {"job_id": record.job_id}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        record = store.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return asdict(record)

    @app.get("/api/results/{job_id}")
    def get_result(job_id: str):
        record = store.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        if record.status in ("queued", "running"):
            raise HTTPException(status_code=409,
                                detail=f"job {job_id} is {record.status}")
        if record.status == "failed":
            raise HTTPException(status_code=500, detail=record.error or "job failed")
        return store.result(job_id)

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
