"""Request/response schemas of the simulation service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..config import RunConfig


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: RunConfig = Field(default_factory=RunConfig)
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    runs: Optional[int] = Field(None, ge=1)
    threads: int = Field(1, ge=1)


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: RunConfig = Field(default_factory=RunConfig)
    preset: Optional[Literal["fig2", "fig3", "fig4"]] = None
    parameter: Optional[Literal["USERS", "FAILURE_PROB", "FEEDER_CAPACITY", "ETA"]] = None
    values: Optional[list[float]] = None
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    runs: Optional[int] = Field(None, ge=1)
    threads: int = Field(1, ge=1)


class RunResponse(BaseModel):
    resolved_config: RunConfig
    columns: list[str]
    rows: list[dict]
    aggregate: dict


class SweepBlock(BaseModel):
    name: str
    mode: str
    parameter: str
    agg_columns: list[str]
    agg_rows: list[dict]
    raw_columns: list[str]
    raw_rows: list[dict]


class SweepResponse(BaseModel):
    resolved_config: RunConfig
    sweeps: list[SweepBlock]


class PresetList(BaseModel):
    presets: list[str]
