"""HTTP service exposing the statement store.

All endpoints live under `/api/v1`. When a built browser UI is available
its static files are served from the root path. Configuration comes from
environment variables: GRAPH_FILE, STATEMENT_FILE, STATEMENT_LOG,
LABEL_FILE, ENTAILMENT_TIMEOUT_MS, and BIND_ADDR for the CLI runner.
"""

from __future__ import annotations

import os
from importlib import metadata
from pathlib import Path
from typing import Optional

from fastapi import APIRouter, FastAPI, HTTPException, Query as QueryParam, Response
from fastapi.staticfiles import StaticFiles

from ..errors import ParseError, StatementNotFoundError
from ..parser import parse_query
from ..statements import Provenance
from ..store import Store
from ..terms import Iri
from .schemas import (
    EntailmentConfigIn,
    EntityViewOut,
    HealthOut,
    QueryRequest,
    QueryResponse,
    SearchHit,
    StatementCreate,
    StatementCreated,
    StatementOut,
    VersionOut,
)

DEFAULT_UI_DIR = Path(__file__).resolve().parents[3] / "frontend" / "dist"


def _package_version() -> str:
    try:
        return metadata.version("rdfcomplete")
    except metadata.PackageNotFoundError:
        return "0.0.0-dev"


def _iri_or_400(value: str, what: str) -> Iri:
    try:
        return Iri(value)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=f"{what}: {exc}") from None


def create_app(
    store: Store,
    default_timeout_ms: Optional[int] = None,
    ui_dir: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="rdfcomplete", version=_package_version())
    api = APIRouter(prefix="/api/v1")

    @api.get("/health", response_model=HealthOut)
    def health() -> HealthOut:
        return HealthOut()

    @api.get("/version", response_model=VersionOut)
    def version() -> VersionOut:
        state = store.state
        return VersionOut(
            package=_package_version(),
            store_version=state.version,
            graph_triples=len(state.graph),
            statements=len(state.statements),
        )

    @api.get("/entity/{iri:path}", response_model=EntityViewOut)
    def entity(iri: str) -> EntityViewOut:
        subject = _iri_or_400(iri, "entity IRI")
        return EntityViewOut.from_view(store.entity_view(subject))

    @api.put("/statement", response_model=StatementCreated, status_code=201)
    def put_statement(body: StatementCreate) -> StatementCreated:
        subject = _iri_or_400(body.subject, "subject")
        predicate = _iri_or_400(body.predicate, "predicate")
        provenance = None
        if body.author is not None or body.reference is not None:
            from datetime import datetime, timezone

            provenance = Provenance(
                author=body.author,
                timestamp=datetime.now(timezone.utc),
                reference=body.reference,
            )
        state = store.add_statement(subject, predicate, provenance)
        entry = state.sp_index.get(subject, predicate)
        return StatementCreated(
            id=entry.base.id,
            subject=subject.value,
            predicate=predicate.value,
            version=state.version,
        )

    @api.delete("/statement", status_code=204)
    def delete_statement(
        subject: str = QueryParam(...), predicate: str = QueryParam(...)
    ) -> Response:
        try:
            store.remove_statement(
                _iri_or_400(subject, "subject"), _iri_or_400(predicate, "predicate")
            )
        except StatementNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return Response(status_code=204)

    @api.get("/statements", response_model=list[StatementOut])
    def statements(predicate: Optional[str] = None) -> list[StatementOut]:
        predicate_iri = (
            _iri_or_400(predicate, "predicate") if predicate is not None else None
        )
        return [
            StatementOut.from_record(record)
            for record in store.list_statements(predicate_iri)
        ]

    @api.get("/search", response_model=list[SearchHit])
    def search(q: str = "", limit: int = 10) -> list[SearchHit]:
        return [SearchHit(**hit) for hit in store.search_entities(q, limit)]

    @api.post("/query", response_model=QueryResponse)
    def query(request: QueryRequest) -> QueryResponse:
        try:
            parsed = parse_query(request.query)
        except ParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        cfg_in = request.config or EntailmentConfigIn()
        try:
            cfg = cfg_in.to_config(default_timeout_ms)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        outcome = store.query_with_completeness(parsed, cfg)
        return QueryResponse.from_outcome(outcome)

    app.include_router(api)

    static_dir = ui_dir if ui_dir is not None else DEFAULT_UI_DIR
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def build_app_from_env() -> FastAPI:
    """App factory for `uvicorn rdfcomplete.service.app:build_app_from_env`."""
    graph_file = os.environ.get("GRAPH_FILE")
    if not graph_file:
        raise RuntimeError("GRAPH_FILE must point to a graph file")
    store = Store.open(
        graph_file,
        statement_file=os.environ.get("STATEMENT_FILE") or None,
        log_path=os.environ.get("STATEMENT_LOG") or None,
        label_file=os.environ.get("LABEL_FILE") or None,
    )
    timeout_ms = os.environ.get("ENTAILMENT_TIMEOUT_MS")
    return create_app(
        store, default_timeout_ms=int(timeout_ms) if timeout_ms else None
    )
