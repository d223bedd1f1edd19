"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"


class RegistryEntry(BaseModel):
    id: str
    description: str


class ConfigResponse(BaseModel):
    tags: list[RegistryEntry]
    domains: list[RegistryEntry]
    rulebase_mode: str
    rule_count: int
    lexicon_entries: int
    candidate_cap: int


class QueryRequest(BaseModel):
    query: str = Field(min_length=1)


class TokenModel(BaseModel):
    surface: str
    start: int
    word_count: int
    tags: list[str]


class TagResponse(BaseModel):
    query: str
    tokens: list[TokenModel]


class CandidateModel(BaseModel):
    combination: list[str]
    confidences: Optional[list[float]] = None


class ClassifyResponse(BaseModel):
    query: str
    outcome: str
    domain: Optional[str] = None
    confidence: Optional[float] = None
    combination: Optional[list[str]] = None
    reason: Optional[str] = None
    tokens: list[TokenModel]
    candidates: list[CandidateModel]


class EvaluateRequest(BaseModel):
    size_min: int = 1
    size_max: Optional[int] = None
    taus: list[float] = [0.6]
    workers: int = 1


class TableRow(BaseModel):
    distance: float
    cases: int
    cumulative: int


class ThresholdEntry(BaseModel):
    tau: float
    outcome_class: str
    count: int


class EvaluateResponse(BaseModel):
    c0: list[TableRow]
    c1: list[TableRow]
    c2_count: int
    total_cases: int
    originals_evaluated: int
    thresholds: list[ThresholdEntry]


class CombinationsResponse(BaseModel):
    count: int
    combinations: list[list[str]]


class ErrorResponse(BaseModel):
    error: str
    detail: str
