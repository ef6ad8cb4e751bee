"""FastAPI front end around the Monte Carlo engine.

The CLI is a thin client of these endpoints; any other HTTP client can drive
the same experiments.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from ..config import RunConfig, to_scenario
from ..errors import ConfigurationError
from ..harness import (PRESET_NAMES, SweepParameter, SweepPoint, SweepSpec,
                       _point_stats, apply_sweep_value, preset_sweeps,
                       run_point, run_sweep)
from ..records import AGG_COLUMNS, RAW_COLUMNS, agg_row, raw_row
from .models import (PresetList, RunRequest, RunResponse, SweepBlock,
                     SweepRequest, SweepResponse)

app = FastAPI(title="tn-ntn-sim", version="0.1.0")


@app.exception_handler(ConfigurationError)
async def _config_error(request, exc: ConfigurationError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/presets", response_model=PresetList)
def presets() -> PresetList:
    return PresetList(presets=list(PRESET_NAMES))


@app.get("/config/defaults", response_model=RunConfig)
def config_defaults() -> RunConfig:
    return RunConfig()


def _resolve(req) -> RunConfig:
    cfg = req.config.model_copy(deep=True)
    if req.seed is not None:
        cfg.scenario.master_seed = req.seed
    if req.runs is not None:
        cfg.runs = req.runs
    return cfg


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest) -> RunResponse:
    cfg = _resolve(req)
    scenario = to_scenario(cfg)
    try:
        results = run_point(scenario, cfg.runs, threads=req.threads)
    except ConfigurationError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    rows = [raw_row(scenario, i, k) for i, k in enumerate(results)]
    point = SweepPoint(value=float(scenario.n_users), runs=results)
    _point_stats(point)
    return RunResponse(resolved_config=cfg, columns=RAW_COLUMNS, rows=rows,
                       aggregate=agg_row(scenario, point))


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> SweepResponse:
    cfg = _resolve(req)
    base = to_scenario(cfg)
    try:
        if req.preset is not None:
            specs = preset_sweeps(req.preset, base, cfg.runs)
            names = [f"{req.preset}_{s.base_scenario.mode.value.lower()}" for s in specs]
        elif req.parameter is not None and req.values:
            specs = [SweepSpec(SweepParameter(req.parameter),
                               [float(v) for v in req.values], base, cfg.runs)]
            names = [f"sweep_{req.parameter.lower()}"]
        else:
            raise ConfigurationError("either preset or parameter+values is required")
        blocks = []
        for name, spec in zip(names, specs):
            result = run_sweep(spec, threads=req.threads)
            agg_rows, raw_rows = [], []
            for point in result.points:
                sc = apply_sweep_value(spec.base_scenario, spec.parameter, point.value)
                agg_rows.append(agg_row(sc, point))
                raw_rows.extend(raw_row(sc, i, k) for i, k in enumerate(point.runs))
            blocks.append(SweepBlock(name=name, mode=result.mode.value,
                                     parameter=result.parameter.value,
                                     agg_columns=AGG_COLUMNS, agg_rows=agg_rows,
                                     raw_columns=RAW_COLUMNS, raw_rows=raw_rows))
    except ConfigurationError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return SweepResponse(resolved_config=cfg, sweeps=blocks)
