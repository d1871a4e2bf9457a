"""Pydantic request/response models for the HTTP API."""
from __future__ import annotations

from datetime import date

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class MetaResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    generation: str
    first_date: date
    last_date: date
    last_update_instant: str
    day_count: int
    token_total: int
    type_total: int
    source_count: int


class SeriesPointModel(BaseModel):
    date: date
    abs: int
    rel: float
    smoothed: float | None = None


class PatternSeriesModel(BaseModel):
    pattern: str
    kind: str  # "unigram" or "bigram"
    points: list[SeriesPointModel]


class HitRowModel(BaseModel):
    word_form: str
    pattern: str
    abs_count_in_range: int


class QueryMetaModel(BaseModel):
    denominators: dict[str, str]
    dropped_patterns: list[str] = Field(default_factory=list)


class QueryResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    generation: str
    mode: str
    window: int
    date_from: date
    date_to: date
    meta: QueryMetaModel
    series: list[PatternSeriesModel]
    hits: list[HitRowModel] | None = None


class BigramHitModel(BaseModel):
    form1: str
    form2: str
    count: int


class BigramsResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    generation: str
    pattern: str
    bmode: str
    date_from: date
    date_to: date
    limit: int
    results: list[BigramHitModel]
