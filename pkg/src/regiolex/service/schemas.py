"""Request/response models for the review service API."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel


class AnnotationIn(BaseModel):
    word: str
    metric: str
    label: Literal[0, 1]
    annotator: str
    category: str | None = None
    note: str | None = None


class AnnotationOut(BaseModel):
    word: str
    metric: str
    label: int
    annotator: str
    category: str | None = None
    note: str | None = None
    timestamp: str


class RankingEntryOut(BaseModel):
    rank: int
    word: str
    value: float
    occurrences: int
    users: int
    location_frequency: int
    toponym: bool
    annotation: AnnotationOut | None = None


class RankingPage(BaseModel):
    metric: str
    total: int
    offset: int
    limit: int
    entries: list[RankingEntryOut]


class MetricInfo(BaseModel):
    metric: str
    size: int


class MetricScoreOut(BaseModel):
    metric: str
    rank: int
    value: float


class LocationRowOut(BaseModel):
    location_id: str
    name: str
    occurrences: int
    users: int
    per_million: float  # occurrences per million tokens written in that location


class SampleOut(BaseModel):
    user: str  # salted hash, never the raw account id
    text: str


class WordDetailOut(BaseModel):
    word: str
    toponym: bool
    scores: list[MetricScoreOut]
    locations: list[LocationRowOut]
    samples: list[SampleOut]


class ExportSummaryOut(BaseModel):
    metric: str
    annotations: int
    words_annotated: int
    labeled_relevant: int
    fraction_relevant: float


class ExportOut(BaseModel):
    summary: ExportSummaryOut
    annotations: list[AnnotationOut]


class ErrorBody(BaseModel):
    code: str
    message: str
