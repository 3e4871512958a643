"""FastAPI service exposing the recovery and experiment operations.

The endpoints are thin wrappers over `twosided.experiments`; the CLI calls
the same handler functions in process, so server and local runs produce
byte-identical CSV payloads.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, experiments
from ..linalg import NumericFailure
from ..specmon import REFERENCE_NMSE
from .schemas import (
    CondnumRequest,
    CsvResponse,
    HealthResponse,
    HeatmapRequest,
    RecoverRequest,
    RecoverResponse,
    SpecmonReportOut,
    SpecmonRequest,
    SpecmonResponse,
)

app = FastAPI(title="twosided", version=__version__,
              description="Signal recovery from joint time- and frequency-domain samples")


def handle_heatmap(req: HeatmapRequest) -> CsvResponse:
    table = experiments.heatmap_table(
        t0=req.t0, grid_min=req.grid_min, grid_max=req.grid_max,
        resolution=req.resolution, ratio_tol=req.ratio_tol,
    )
    return CsvResponse(columns=list(table.header), n_rows=len(table.rows), csv=table.render())


def handle_condnum(req: CondnumRequest) -> CsvResponse:
    if req.d_max < req.d_min:
        raise ValueError(f"d_max {req.d_max} < d_min {req.d_min}")
    table = experiments.condnum_table(
        req.variant, range(req.d_min, req.d_max + 1), seed=req.seed, grid_mode=req.grid_mode,
    )
    return CsvResponse(columns=list(table.header), n_rows=len(table.rows), csv=table.render())


def handle_specmon(req: SpecmonRequest) -> SpecmonResponse:
    result = experiments.specmon_tables(
        window_len=req.window_len, snr=req.snr, snr_is_db=req.snr_is_db,
        trials=req.trials, seed=req.seed,
    )
    return SpecmonResponse(
        per_sample_csv=result.per_sample.render(),
        summary_csv=result.summary.render(),
        report=SpecmonReportOut(**result.report.as_dict(), reference_nmse=REFERENCE_NMSE),
    )


def handle_recover(req: RecoverRequest) -> RecoverResponse:
    family = experiments.make_family(req.family, req.order, req.step)
    result = experiments.recover_table(
        family,
        [n.value for n in req.nodes if n.domain == "T"],
        [n.value for n in req.nodes if n.domain == "F"],
        [(m.node, complex(m.re, m.im)) for m in req.measurements if m.domain == "T"],
        [(m.node, complex(m.re, m.im)) for m in req.measurements if m.domain == "F"],
    )
    return RecoverResponse(
        csv=result.table.render(),
        classification=result.classification.value,
        warning=result.warning,
    )


def _run(handler, req):
    try:
        return handler(req)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except NumericFailure as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/experiments/heatmap", response_model=CsvResponse)
def heatmap(req: HeatmapRequest) -> CsvResponse:
    return _run(handle_heatmap, req)


@app.post("/experiments/condnum", response_model=CsvResponse)
def condnum(req: CondnumRequest) -> CsvResponse:
    return _run(handle_condnum, req)


@app.post("/experiments/specmon", response_model=SpecmonResponse)
def specmon_endpoint(req: SpecmonRequest) -> SpecmonResponse:
    return _run(handle_specmon, req)


@app.post("/recover", response_model=RecoverResponse)
def recover_endpoint(req: RecoverRequest) -> RecoverResponse:
    return _run(handle_recover, req)
