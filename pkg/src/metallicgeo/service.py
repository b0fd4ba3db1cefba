"""HTTP service wrapping the verification core.

Endpoints:
  GET  /health          — liveness and version
  POST /verify/builtin  — build a named example and run the full verdict
  POST /verify/dataset  — verify a dataset document posted as JSON
  POST /family-sweep    — rotation-family sweep of the built-in torus base

Run with:  uvicorn metallicgeo.service:app
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .cli import BUILTIN_NAMES
from .compat import full_verdict
from .dataset import DatasetFormatError, dataset_loads
from .examples import (
    build_ekt_immersion,
    build_sphere_product,
    build_sphere_product_hypersurface,
)
from .family import sweep_angles, torus_base, verify_family
from .linalg import DEFAULT_TOL
from .report import ResidualReport
from .structures import MetallicParams
from .submanifold import check_hypersurface_relations

app = FastAPI(title="metallicgeo", version=__version__)


class ResidualEntry(BaseModel):
    name: str
    residual: float


class ReportModel(BaseModel):
    entries: list[ResidualEntry]
    tol: float
    verdict: str
    max_residual: float

    @classmethod
    def from_report(cls, report: ResidualReport) -> "ReportModel":
        return cls(**report.to_dict())


class BuiltinRequest(BaseModel):
    name: str
    p: float = 1.0
    q: float = 1.0
    a: float = 2.0
    b: float = 2.0
    kappa: float = 0.0
    tau: float = 1.0
    n1: int = 2
    n2: int = 2
    c1: float = 1.0
    c2: float = 1.0
    tol: float = DEFAULT_TOL


class DatasetRequest(BaseModel):
    dataset: dict = Field(description="A dataset document (version + records).")
    tol: float = DEFAULT_TOL


class DatasetResponse(BaseModel):
    records: list[ReportModel]
    passed: int
    failed: int


class FamilySweepRequest(BaseModel):
    p: float = 1.0
    q: float = 1.0
    c1: float = 1.0
    c2: float = 1.0
    thetas: int = 24
    tol: float = DEFAULT_TOL


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/verify/builtin", response_model=ReportModel)
def verify_builtin(req: BuiltinRequest) -> ReportModel:
    if req.name not in BUILTIN_NAMES:
        raise HTTPException(status_code=422, detail=f"unknown builtin {req.name!r}")
    try:
        if req.name == "sphere-product":
            record = build_sphere_product(
                req.n1, req.n2, req.c1, req.c2, MetallicParams(req.p, req.q)
            )
            extra = None
        elif req.name == "sphere-product-hypersurface":
            hyp, record = build_sphere_product_hypersurface(
                req.n1, req.n2, req.c1, req.c2, MetallicParams(req.p, req.q)
            )
            extra = check_hypersurface_relations(hyp, tol=req.tol)
        else:
            if req.tau == 0:
                raise ValueError("tau must be nonzero")
            hyp, record = build_ekt_immersion(req.kappa, req.tau, req.a, req.b)
            extra = check_hypersurface_relations(hyp, tol=req.tol)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    report = full_verdict(record, tol=req.tol)
    if extra is not None:
        report = report.merged(extra, prefix="hyp:")
    return ReportModel.from_report(report)


@app.post("/verify/dataset", response_model=DatasetResponse)
def verify_dataset(req: DatasetRequest) -> DatasetResponse:
    import json

    try:
        records = dataset_loads(json.dumps(req.dataset))
    except DatasetFormatError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    reports = [full_verdict(record, tol=req.tol) for record in records]
    passed = sum(1 for r in reports if r.passed)
    return DatasetResponse(
        records=[ReportModel.from_report(r) for r in reports],
        passed=passed,
        failed=len(reports) - passed,
    )


@app.post("/family-sweep", response_model=ReportModel)
def family_sweep(req: FamilySweepRequest) -> ReportModel:
    if req.thetas < 1:
        raise HTTPException(status_code=422, detail="thetas must be at least 1")
    try:
        surface = torus_base(req.c1, req.c2, MetallicParams(req.p, req.q))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    report = verify_family(surface, sweep_angles(req.thetas), tol=req.tol)
    return ReportModel.from_report(report)
