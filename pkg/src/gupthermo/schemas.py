"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from .runners import METHOD_ORDER


class SweepRequest(BaseModel):
    system: str = "oscillator"
    beta: float = Field(default=0.01, ge=0.0)
    beta_prime: float = Field(default=0.01, ge=0.0)
    mass: float = Field(default=0.5, gt=0.0)
    omega: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)
    volume: float = Field(default=1.0, gt=0.0)
    alpha: float = Field(default=1.0, gt=0.0)
    exponent: float = Field(default=2.0, gt=0.0)
    dimension: int = Field(default=3, ge=1)
    jacobian_growth: float = Field(default=0.0, ge=0.0)
    t_min: float = Field(default=0.1, gt=0.0)
    t_max: float = Field(default=20.0, gt=0.0)
    points: int = Field(default=60, ge=2)
    scale: str = "linear"
    methods: Tuple[str, ...] = METHOD_ORDER
    jobs: int = Field(default=1, ge=1)


class SweepRow(BaseModel):
    T: float
    Z1: float
    E_per_N: float
    C_per_N: float
    method: str


class SweepResponse(BaseModel):
    rows: List[SweepRow]


class JacobianVerifyRequest(BaseModel):
    dimension: int = Field(default=3, ge=1, le=3)
    trials: int = Field(default=100, ge=1)
    seed: int = 42
    beta: float = Field(default=0.01, ge=0.0)
    beta_prime: float = Field(default=0.01, ge=0.0)


class JacobianVerifyResponse(BaseModel):
    dimension: int
    trials: int
    seed: int
    pairing_entries: int
    max_deviation_bruteforce: float
    max_deviation_closed_form: Optional[float]
    tolerance: float
    passed: bool


class LimitsRequest(BaseModel):
    system: str = "oscillator"
    beta: float = Field(default=0.01, ge=0.0)
    beta_prime: float = Field(default=0.01, ge=0.0)
    mass: float = Field(default=0.5, gt=0.0)
    omega: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)
    volume: float = Field(default=1.0, gt=0.0)


class LimitRowModel(BaseModel):
    name: str
    numeric: float
    reference: float
    deviation: float
    tolerance: float
    passed: bool


class LimitsResponse(BaseModel):
    system: str
    rows: List[LimitRowModel]
    passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
