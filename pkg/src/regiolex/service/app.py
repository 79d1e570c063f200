"""HTTP API for the annotation workflow.

GET  /api/metrics                     available rankings
GET  /api/rankings/{metric}           paged ranking entries with annotation status
GET  /api/words/{word}                per-location table, scores, sample contexts
POST /api/annotations                 store one judgment (append-only, supersedes)
GET  /api/export/{metric}             full dump plus relevant fraction

Errors are JSON {code, message}. The service never mutates corpus
artifacts; only the annotation log grows.
"""

from __future__ import annotations

from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..annotations import Annotation, export_annotations
from .schemas import (
    AnnotationIn,
    AnnotationOut,
    ExportOut,
    MetricInfo,
    RankingEntryOut,
    RankingPage,
    WordDetailOut,
)
from .state import ServiceState


def create_app(state: ServiceState, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="regiolex review service")

    @app.exception_handler(HTTPException)
    async def on_http_error(request: Request, exc: HTTPException):
        code = {404: "not_found", 400: "bad_request"}.get(exc.status_code, "error")
        return JSONResponse(
            status_code=exc.status_code, content={"code": code, "message": str(exc.detail)}
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"code": "validation_error", "message": str(exc.errors())}
        )

    @app.get("/api/metrics", response_model=list[MetricInfo])
    def list_metrics():
        return [
            MetricInfo(metric=metric, size=len(rows))
            for metric, rows in sorted(state.rankings.items())
        ]

    @app.get("/api/rankings/{metric}", response_model=RankingPage)
    def get_ranking_page(
        metric: str, offset: int = 0, limit: int = 50, annotator: str | None = None
    ):
        if metric not in state.rankings:
            raise HTTPException(404, f"no ranking for metric {metric!r}")
        if offset < 0 or limit < 0:
            raise HTTPException(400, "offset and limit must be non-negative")
        rows = state.rankings[metric]
        page = rows[offset : offset + limit]
        current = state.store.current(metric)
        if annotator is None:
            # latest annotation for the word by anyone
            by_word: dict[str, Annotation] = {}
            for record in state.store.history():
                if record.metric == metric:
                    by_word[record.word] = record
            status = lambda w: by_word.get(w)
        else:
            status = lambda w: current.get((w, annotator))
        entries = []
        for row in page:
            note = status(row.word)
            entries.append(
                RankingEntryOut(
                    rank=row.rank,
                    word=row.word,
                    value=row.value,
                    occurrences=row.occurrences,
                    users=row.users,
                    location_frequency=row.location_frequency,
                    toponym=row.toponym,
                    annotation=AnnotationOut(**asdict(note)) if note else None,
                )
            )
        return RankingPage(
            metric=metric, total=len(rows), offset=offset, limit=limit, entries=entries
        )

    @app.get("/api/words/{word}", response_model=WordDetailOut)
    def get_word_detail(word: str):
        scores = state.word_scores.get(word)
        if scores is None and word not in state.stats:
            raise HTTPException(404, f"unknown word {word!r}")
        return WordDetailOut(
            word=word,
            toponym=state.word_toponym.get(word, False),
            scores=[
                {"metric": metric, "rank": rank, "value": value}
                for metric, (rank, value) in sorted((scores or {}).items())
            ],
            locations=state.location_rows(word),
            samples=state.sample_contexts(word),
        )

    @app.post("/api/annotations", response_model=AnnotationOut)
    def post_annotation(body: AnnotationIn):
        if body.metric not in state.rankings:
            raise HTTPException(400, f"no ranking for metric {body.metric!r}")
        stored = state.store.append(
            Annotation(
                word=body.word,
                metric=body.metric,
                label=body.label,
                annotator=body.annotator,
                category=body.category,
                note=body.note,
            )
        )
        return AnnotationOut(**asdict(stored))

    @app.get("/api/export/{metric}", response_model=ExportOut)
    def get_export(metric: str):
        if metric not in state.rankings:
            raise HTTPException(404, f"no ranking for metric {metric!r}")
        return export_annotations(state.store, metric)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
