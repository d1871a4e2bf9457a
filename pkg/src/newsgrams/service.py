"""HTTP API over the published snapshot: metadata, queries, bigram finder, exports."""
from __future__ import annotations

import logging
import re
from datetime import date

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse

from .config import AppConfig
from .errors import EmptyRange, InvalidQuery, SnapshotMissing, TooManyPatterns
from .query import (
    BIGRAM_MODES,
    DEFAULT_BIGRAM_LIMIT,
    DENOMINATORS,
    QuerySpec,
    query_result_to_csv,
    sanitize_pattern,
)
from .schemas import (
    BigramHitModel,
    BigramsResponse,
    HitRowModel,
    MetaResponse,
    PatternSeriesModel,
    QueryMetaModel,
    QueryResponse,
    SeriesPointModel,
)
from .snapshots import LoadedSnapshot, SnapshotStore

log = logging.getLogger(__name__)

_DOWNLOAD_NAME = re.compile(
    r"^(?:(?:daily|weekly)-(?:unigrams|bigrams)-\d{4}-\d{2}-\d{2}\.tsv|metrics\.csv|report\.html)$"
)


def _parse_date(value: str | None, fallback: date, label: str) -> date:
    if value is None or value == "":
        return fallback
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"invalid {label} date {value!r}") from None


def create_app(config: AppConfig | None = None, store: SnapshotStore | None = None) -> FastAPI:
    config = config or AppConfig()
    store = store or SnapshotStore(config.data_dir)
    app = FastAPI(title="newsgrams", version="1.0")
    app.state.store = store
    app.state.config = config
    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins,
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    def snapshot_or_503() -> LoadedSnapshot:
        try:
            return store.get()
        except SnapshotMissing as exc:
            raise HTTPException(status_code=503, detail=str(exc)) from exc

    def build_spec(
        snap: LoadedSnapshot, patterns: str, mode: str, from_: str | None, to: str | None, window: int
    ) -> QuerySpec:
        date_from = _parse_date(from_, snap.first_date, "from")
        date_to = _parse_date(to, snap.last_date, "to")
        try:
            return QuerySpec.create(patterns, mode, date_from, date_to, window)
        except TooManyPatterns as exc:
            raise HTTPException(status_code=413, detail=str(exc)) from exc
        except InvalidQuery as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/api/v1/meta", response_model=MetaResponse)
    def get_meta() -> MetaResponse:
        snap = snapshot_or_503()
        meta = snap.meta
        if meta.get("first_date") is None:
            raise HTTPException(status_code=503, detail="published snapshot is empty")
        return MetaResponse(
            generation=snap.generation,
            first_date=snap.first_date,
            last_date=snap.last_date,
            last_update_instant=snap.published_at,
            day_count=meta["day_count"],
            token_total=meta["token_total"],
            type_total=meta["type_total"],
            source_count=meta["source_count"],
        )

    @app.get("/api/v1/query", response_model=QueryResponse)
    def get_query(
        patterns: str = "",
        mode: str = "exact",
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        window: int = 1,
    ) -> QueryResponse:
        snap = snapshot_or_503()
        spec = build_spec(snap, patterns, mode, from_, to, window)
        result = snap.engine.run_query(spec)
        return QueryResponse(
            generation=snap.generation,
            mode=spec.mode,
            window=spec.window,
            date_from=spec.date_from,
            date_to=spec.date_to,
            meta=QueryMetaModel(
                denominators=dict(DENOMINATORS), dropped_patterns=list(spec.dropped)
            ),
            series=[
                PatternSeriesModel(
                    pattern=s.pattern,
                    kind=s.kind,
                    points=[
                        SeriesPointModel(
                            date=p.day, abs=p.abs_count, rel=p.rel_freq, smoothed=p.smoothed
                        )
                        for p in s.points
                    ],
                )
                for s in result.series
            ],
            hits=None
            if result.hits is None
            else [
                HitRowModel(
                    word_form=h.word_form, pattern=h.pattern, abs_count_in_range=h.abs_count
                )
                for h in result.hits
            ],
        )

    @app.get("/api/v1/export.csv")
    def get_export_csv(
        patterns: str = "",
        mode: str = "exact",
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        window: int = 1,
    ) -> Response:
        snap = snapshot_or_503()
        spec = build_spec(snap, patterns, mode, from_, to, window)
        result = snap.engine.run_query(spec)
        csv_text = query_result_to_csv(result)
        return Response(
            content=csv_text,
            media_type="text/csv; charset=utf-8",
            headers={
                "Content-Disposition": 'attachment; filename="frequencies.csv"',
                "X-Snapshot-Generation": snap.generation,
            },
        )

    @app.get("/api/v1/bigrams", response_model=BigramsResponse)
    def get_bigrams(
        pattern: str = "",
        bmode: str = "anywhere",
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        limit: int = DEFAULT_BIGRAM_LIMIT,
    ) -> BigramsResponse:
        snap = snapshot_or_503()
        if bmode not in BIGRAM_MODES:
            raise HTTPException(status_code=400, detail=f"unknown bmode {bmode!r}")
        if not (1 <= limit <= 1000):
            raise HTTPException(status_code=400, detail="limit must be in [1, 1000]")
        cleaned = sanitize_pattern(pattern)
        if not cleaned:
            raise HTTPException(status_code=400, detail="pattern is empty after sanitization")
        date_from = _parse_date(from_, snap.first_date, "from")
        date_to = _parse_date(to, snap.last_date, "to")
        try:
            results = snap.engine.find_bigrams(cleaned, bmode, date_from, date_to, limit)
        except (InvalidQuery, EmptyRange) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return BigramsResponse(
            generation=snap.generation,
            pattern=cleaned,
            bmode=bmode,
            date_from=date_from,
            date_to=date_to,
            limit=limit,
            results=[BigramHitModel(form1=b.form1, form2=b.form2, count=b.count) for b in results],
        )

    @app.get("/downloads/{filename}")
    def get_download(filename: str) -> FileResponse:
        snap = snapshot_or_503()
        if not _DOWNLOAD_NAME.match(filename):
            raise HTTPException(status_code=404, detail="no such download")
        path = snap.downloads_dir(store) / filename
        if not path.is_file():
            raise HTTPException(status_code=404, detail="no such download")
        media = "text/csv" if filename.endswith(".csv") else (
            "text/html" if filename.endswith(".html") else "text/tab-separated-values"
        )
        return FileResponse(
            path, media_type=media, headers={"X-Snapshot-Generation": snap.generation}
        )

    return app
