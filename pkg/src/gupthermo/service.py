"""HTTP service wrapping the toolkit.

Every endpoint is a stateless wrapper over the runners: configuration errors
surface as 422 responses, numeric failures during a sweep as 500 responses
carrying the failing temperature and method.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, HTTPException

from . import __version__
from .runners import (
    SweepConfig,
    SweepFailure,
    run_jacobian_verify,
    run_limits,
    run_sweep,
)
from .schemas import (
    HealthResponse,
    JacobianVerifyRequest,
    JacobianVerifyResponse,
    LimitsRequest,
    LimitsResponse,
    SweepRequest,
    SweepResponse,
    SweepRow,
)

app = FastAPI(
    title="gupthermo",
    description="Thermodynamics with a minimal length: deformed phase-space "
                "measures, exact oscillator spectra, asymptotic limit checks.",
    version=__version__,
)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: SweepRequest) -> SweepResponse:
    try:
        config = SweepConfig(**request.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    try:
        rows = run_sweep(config)
    except SweepFailure as exc:
        raise HTTPException(
            status_code=500,
            detail={"message": str(exc), "T": exc.T, "method": exc.method})
    return SweepResponse(rows=[
        SweepRow(T=r.T, Z1=r.Z1, E_per_N=r.E_per_N, C_per_N=r.C_per_N,
                 method=r.method)
        for r in rows
    ])


@app.post("/jacobian/verify", response_model=JacobianVerifyResponse)
def jacobian_verify(request: JacobianVerifyRequest) -> JacobianVerifyResponse:
    try:
        report = run_jacobian_verify(
            dimension=request.dimension, trials=request.trials,
            seed=request.seed, beta=request.beta,
            beta_prime=request.beta_prime)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return JacobianVerifyResponse(
        dimension=report.dimension, trials=report.trials, seed=report.seed,
        pairing_entries=report.pairing_entries,
        max_deviation_bruteforce=report.max_deviation_bruteforce,
        max_deviation_closed_form=report.max_deviation_closed_form,
        tolerance=report.tolerance, passed=report.passed)


@app.post("/limits", response_model=LimitsResponse)
def limits(request: LimitsRequest) -> LimitsResponse:
    try:
        report = run_limits(**request.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return LimitsResponse(
        system=report.system,
        rows=[asdict(row) for row in report.rows],
        passed=report.passed)
