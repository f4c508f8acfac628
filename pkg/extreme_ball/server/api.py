"""FastAPI application exposing the extremality service."""

from __future__ import annotations

from typing import Any, Dict, Optional

from fastapi import FastAPI, HTTPException
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict, Field

from .. import __version__
from .service import ExtremalityService


class ConfigPayload(BaseModel):
    """Payload used when updating configuration via the API."""

    model_config = ConfigDict(extra="forbid")

    norm: Optional[Dict[str, Any]] = None
    contact: Optional[Dict[str, Any]] = None
    rank: Optional[Dict[str, Any]] = None
    witness: Optional[Dict[str, Any]] = None
    cofinite: Optional[Dict[str, Any]] = None
    search: Optional[Dict[str, Any]] = None


class ProblemRequest(BaseModel):
    """Request body carrying a problem document."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    problem: Dict[str, Any]
    notes: Optional[str] = None


class OracleRequest(ProblemRequest):
    trials: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None


class VerifyRequest(BaseModel):
    """Request body carrying a stored classify/witness document."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    document: Dict[str, Any]
    notes: Optional[str] = None


service = ExtremalityService()

app = FastAPI(title="extreme-ball API", version=__version__)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/", tags=["meta"])
async def root() -> Dict[str, Any]:
    """Return basic information about the API."""

    return {
        "name": "extreme-ball API",
        "version": __version__,
        "endpoints": ["/dashboard", "/runs", "/config", "/classify", "/witness", "/verify", "/oracle"],
    }


@app.get("/health", tags=["meta"])
async def health() -> Dict[str, str]:
    """Health probe used for readiness checks."""

    return {"status": "ok"}


@app.get("/dashboard", tags=["dashboard"])
async def dashboard() -> Dict[str, Any]:
    return service.get_dashboard()


@app.get("/config", tags=["config"])
async def get_config() -> Dict[str, Any]:
    """Fetch the current configuration."""

    return {"config": service.get_config()}


@app.put("/config", tags=["config"])
async def update_config(payload: ConfigPayload) -> Dict[str, Any]:
    """Update configuration sections."""

    data = payload.model_dump(exclude_none=True)
    try:
        updated = service.update_config(data)
    except TypeError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {"config": updated}


@app.post("/classify", tags=["extremality"])
async def classify(request: ProblemRequest) -> Dict[str, Any]:
    record = await run_in_threadpool(lambda: service.classify(request.problem, notes=request.notes))
    return {"run": record}


@app.post("/witness", tags=["extremality"])
async def witness(request: ProblemRequest) -> Dict[str, Any]:
    record = await run_in_threadpool(lambda: service.witness(request.problem, notes=request.notes))
    return {"run": record}


@app.post("/verify", tags=["extremality"])
async def verify(request: VerifyRequest) -> Dict[str, Any]:
    record = await run_in_threadpool(lambda: service.verify(request.document, notes=request.notes))
    return {"run": record}


@app.post("/oracle", tags=["oracle"])
async def oracle(request: OracleRequest) -> Dict[str, Any]:
    """Run the perturbation search against the rank test."""

    record = await run_in_threadpool(
        lambda: service.oracle(
            request.problem,
            trials=request.trials,
            seed=request.seed,
            notes=request.notes,
        )
    )
    return {"run": record}


@app.get("/runs", tags=["runs"])
async def list_runs(limit: int = 20) -> Dict[str, Any]:
    """Return run history."""

    return {"runs": service.list_runs(limit=limit)}


@app.get("/runs/{run_id}", tags=["runs"])
async def get_run(run_id: str) -> Dict[str, Any]:
    """Retrieve a specific run by identifier."""

    run = service.get_run(run_id)
    if run is None:
        raise HTTPException(status_code=404, detail="Run not found")
    return {"run": run}
