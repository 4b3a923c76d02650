"""HTTP service exposing sweeps, presets, and topologies.

Long sweeps are better run behind a service than inside a terminal
session; the CLI is a thin client of these endpoints (in-process by
default, remote with --url).  Config content travels in request bodies,
results come back as CSV text, and config mistakes map to 400 while
unknown names map to 404.
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException, Request, Response
from pydantic import BaseModel, Field

from . import __version__
from .config import ConfigError, load_preset, parse_config, preset_names
from .experiment import (
    CSV_COLUMNS,
    aggregate_csv,
    expand_runs,
    rows_to_csv,
    run_one,
    run_sweep,
    sweep_failed,
)
from .topology import BUILTIN_NAMES, average_nodal_degree, builtin_topology


class RunBody(BaseModel):
    config: str = Field(description="sweep config file content")
    seed: int | None = Field(default=None, description="replace the seed list with this one seed")
    parallelism: int = Field(default=1, ge=1)
    trace: bool = Field(default=False, description="return an event trace; needs exactly one run")


class RunResult(BaseModel):
    csv: str
    trace: str | None
    failed: bool


class SweepBody(BaseModel):
    config: str
    seed: int | None = None
    parallelism: int = Field(default=1, ge=1)


def _parse(config_text: str, seed: int | None):
    try:
        specs = parse_config(config_text)
        if seed is not None:
            specs = [replace(s, seeds=(seed,)) for s in specs]
        return specs
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def create_app() -> FastAPI:
    app = FastAPI(title="eonsim", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": preset_names()}

    @app.get("/presets/{name}", response_class=Response)
    def preset(name: str) -> Response:
        try:
            content = load_preset(name)
        except ConfigError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return Response(content, media_type="text/plain")

    @app.get("/topologies")
    def topologies() -> dict:
        return {"topologies": list(BUILTIN_NAMES)}

    @app.get("/topologies/{name}")
    def topology(name: str) -> dict:
        if name not in BUILTIN_NAMES:
            raise HTTPException(status_code=404, detail=f"unknown topology {name!r}")
        t = builtin_topology(name)
        return {
            "name": t.name,
            "node_count": t.node_count,
            "link_count": len(t.links),
            "average_nodal_degree": average_nodal_degree(t),
            "links": [[l.u, l.v, l.length_km] for l in t.links],
        }

    @app.post("/run")
    def run(body: RunBody) -> RunResult:
        specs = _parse(body.config, body.seed)
        try:
            plans = expand_runs(specs)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        trace_text: str | None = None
        if body.trace:
            if len(plans) != 1:
                raise HTTPException(
                    status_code=400,
                    detail=f"trace needs exactly one run, config expands to {len(plans)}",
                )
            lines: list[str] = []
            csv_text = rows_to_csv([run_one(plans[0], trace=lines.append)], CSV_COLUMNS)
            trace_text = "\n".join(lines) + ("\n" if lines else "")
        else:
            csv_text = run_sweep(specs, parallelism=body.parallelism)
        return RunResult(csv=csv_text, trace=trace_text, failed=sweep_failed(csv_text))

    @app.post("/sweep", response_class=Response)
    def sweep(body: SweepBody) -> Response:
        specs = _parse(body.config, body.seed)
        try:
            csv_text = run_sweep(specs, parallelism=body.parallelism)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return Response(csv_text, media_type="text/csv")

    @app.post("/aggregate", response_class=Response)
    async def aggregate(request: Request) -> Response:
        raw = (await request.body()).decode("utf-8", errors="replace")
        try:
            out = aggregate_csv(raw)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return Response(out, media_type="text/csv")

    return app


app = create_app()
