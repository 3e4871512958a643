"""Request/response models for the recovery and experiment endpoints."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class HeatmapRequest(BaseModel):
    t0: float = 0.0
    grid_min: float = -3.0
    grid_max: float = 3.0
    resolution: int = Field(default=201, ge=2, le=2001)
    ratio_tol: float = Field(default=1.85e-5, gt=0)


class CondnumRequest(BaseModel):
    variant: Literal["hermite", "shared-interval", "dft-post", "sinc"]
    d_min: int = Field(default=4, ge=2)
    d_max: int = Field(default=24, ge=2)
    seed: int = 0
    grid_mode: Optional[Literal["spacing-over-count", "inclusive-endpoints"]] = None


class SpecmonRequest(BaseModel):
    window_len: int = Field(default=1024, ge=2)
    snr: float = Field(default=16.0, gt=0)
    snr_is_db: bool = False
    trials: int = Field(default=10, ge=1)
    seed: int = 0


class NodeIn(BaseModel):
    domain: Literal["T", "F"]
    value: float


class MeasurementIn(BaseModel):
    domain: Literal["T", "F"]
    node: float
    re: float
    im: float = 0.0


class RecoverRequest(BaseModel):
    family: Literal["hermite", "sinc"]
    order: int = Field(ge=1)
    step: float = Field(default=1.0, gt=0)
    nodes: list[NodeIn]
    measurements: list[MeasurementIn]


class CsvResponse(BaseModel):
    columns: list[str]
    n_rows: int
    csv: str


class SpecmonReportOut(BaseModel):
    nmse_time_only: float
    nmse_plus2: float
    nmse_plus4: float
    trials: int
    seed: int
    reference_nmse: tuple[float, float, float]


class SpecmonResponse(BaseModel):
    per_sample_csv: str
    summary_csv: str
    report: SpecmonReportOut


class RecoverResponse(BaseModel):
    csv: str
    classification: str
    warning: Optional[str] = None


class HealthResponse(BaseModel):
    status: str
    version: str
