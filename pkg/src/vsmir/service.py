"""HTTP API over one repository: upload, search, judge, browse.

Every engine error maps to exactly one (HTTP status, machine code) pair and
a JSON body `{"code": ..., "message": ...}`; malformed input of any shape is
a 4xx, never a 5xx.  GET endpoints never change corpus or judgment state
(`/api/search` appends an audit run record so judgments can reference it,
but the index itself is untouched).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import (
    DocumentNotInRunError,
    EmptyCorpusError,
    IndexFormatError,
    RepositoryLockedError,
    StoreIntegrityError,
    UnknownClassificationError,
    UnknownDocumentError,
    UnknownMeasureError,
    UnknownRunError,
    VsmError,
)
from .evaluation import EvalMetrics
from .search import QueryRun, SearchRequest
from .similarity import CosineMode, Measure
from .store import Repository

__all__ = ["ServiceConfig", "create_app"]


@dataclass(frozen=True)
class ServiceConfig:
    """Service-level knobs; the repository carries everything else."""

    default_cosine_mode: CosineMode = CosineMode.CONSISTENT
    strict_classifications: bool = False
    static_dir: str | Path | None = None


class _MalformedRequest(VsmError):
    """Body or parameter did not parse; maps to 400 malformed_request."""


_ERROR_MAP: list[tuple[type[Exception], int, str]] = [
    (_MalformedRequest, 400, "malformed_request"),
    (UnknownMeasureError, 400, "unknown_measure"),
    (EmptyCorpusError, 409, "empty_corpus"),
    (UnknownClassificationError, 422, "unknown_classification"),
    (UnknownRunError, 404, "unknown_run"),
    (DocumentNotInRunError, 422, "document_not_in_run"),
    (UnknownDocumentError, 404, "unknown_document"),
    (RepositoryLockedError, 409, "repository_locked"),
    (StoreIntegrityError, 409, "store_corrupt"),
    (IndexFormatError, 409, "index_corrupt"),
]


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(repo: Repository, config: ServiceConfig | None = None) -> FastAPI:
    config = config if config is not None else ServiceConfig()
    app = FastAPI(title="vsmir")

    @app.exception_handler(VsmError)
    async def handle_vsm_error(request: Request, exc: VsmError):
        for klass, status, code in _ERROR_MAP:
            if isinstance(exc, klass):
                return _error_response(status, code, str(exc))
        return _error_response(400, "bad_request", str(exc))

    @app.exception_handler(ValueError)
    async def handle_value_error(request: Request, exc: ValueError):
        # Domain validation (negative threshold, zero limit, ...).
        return _error_response(400, "invalid_parameter", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "malformed_request", str(exc.errors()[:3]))

    # -- documents --------------------------------------------------------

    @app.post("/api/documents", status_code=201)
    async def upload_document(request: Request) -> dict:
        name, classification, text = await _parse_upload(request)
        if config.strict_classifications and classification not in repo.classifications():
            raise UnknownClassificationError(
                f"classification {classification!r} is not registered "
                "(strict classification mode is on)"
            )
        doc = repo.add_document(name, classification, text)
        return {"doc_id": doc.doc_id, "term_count": len(doc.terms)}

    # -- search -----------------------------------------------------------

    @app.get("/api/search")
    def search(
        q: str,
        measure: str,
        classifications: list[str] = Query(default=[], alias="class"),
        threshold: float = 0.0,
        limit: int | None = None,
    ) -> dict:
        request = SearchRequest(
            query_text=q,
            measure=Measure.parse(measure),
            classifications=frozenset(classifications),
            threshold=threshold,
            limit=limit,
        )
        run = repo.search(request, cosine_mode=config.default_cosine_mode)
        return _run_payload(run, repo.precision(run.run_id))

    # -- judgments ----------------------------------------------------------

    @app.post("/api/runs/{run_id}/judgments")
    async def judge(run_id: int, request: Request) -> dict:
        body = await _parse_json_object(request)
        doc_id = body.get("doc_id")
        relevant = body.get("relevant")
        if isinstance(doc_id, bool) or not isinstance(doc_id, int):
            raise _MalformedRequest("'doc_id' must be an integer")
        if not isinstance(relevant, bool):
            raise _MalformedRequest("'relevant' must be true or false")
        metrics = repo.judge(run_id, doc_id, relevant)
        return _metrics_payload(run_id, metrics)

    # -- browsing ---------------------------------------------------------

    @app.get("/api/collection")
    def collection(
        classification: str | None = Query(default=None, alias="class"),
        offset: int = 0,
        limit: int = 50,
    ) -> dict:
        if offset < 0:
            raise ValueError(f"offset must be >= 0, got {offset}")
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        docs = repo.documents({classification} if classification is not None else None)
        page = docs[offset : offset + limit]
        return {
            "total": len(docs),
            "offset": offset,
            "limit": limit,
            "documents": [
                {
                    "doc_id": doc.doc_id,
                    "name": doc.name,
                    "classification": doc.classification,
                    "term_count": len(doc.terms),
                }
                for doc in page
            ],
        }

    @app.get("/api/classifications")
    def classifications() -> dict:
        return {"classifications": sorted(repo.classifications())}

    # -- static UI ----------------------------------------------------------

    static_dir = Path(config.static_dir) if config.static_dir else None
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    else:

        @app.get("/", include_in_schema=False)
        def placeholder() -> HTMLResponse:
            return HTMLResponse(
                "<!doctype html><title>vsmir</title>"
                "<h1>vsmir service is running</h1>"
                "<p>No web UI assets configured; the API lives under <code>/api/</code>.</p>"
            )

    return app


async def _parse_upload(request: Request) -> tuple[str, str, str]:
    """Accept multipart/form-data (file + classification [+ name]) or JSON
    {name, classification, text}.  Anything else is malformed."""
    content_type = request.headers.get("content-type", "")
    if content_type.startswith("multipart/form-data"):
        form = await request.form()
        upload = form.get("file")
        if upload is None or isinstance(upload, str):
            raise _MalformedRequest("multipart body requires a 'file' part")
        try:
            text = (await upload.read()).decode("utf-8")
        except UnicodeDecodeError:
            raise _MalformedRequest("uploaded file is not valid UTF-8") from None
        name = form.get("name") or (Path(upload.filename).stem if upload.filename else "")
        classification = form.get("classification")
    else:
        body = await _parse_json_object(request)
        name = body.get("name")
        classification = body.get("classification")
        text = body.get("text")
        if not isinstance(text, str):
            raise _MalformedRequest("'text' must be a string")
    if not isinstance(name, str) or not name.strip():
        raise _MalformedRequest("'name' must be a non-empty string")
    if not isinstance(classification, str) or not classification.strip():
        raise _MalformedRequest("'classification' must be a non-empty string")
    return name.strip(), classification.strip(), text


async def _parse_json_object(request: Request) -> dict[str, Any]:
    try:
        body = await request.json()
    except Exception:
        raise _MalformedRequest("body is not valid JSON") from None
    if not isinstance(body, dict):
        raise _MalformedRequest("body must be a JSON object")
    return body


def _run_payload(run: QueryRun, precision: float) -> dict:
    return {
        "run_id": run.run_id,
        "created_at": run.created_at,
        "query": run.request.query_text,
        "measure": run.request.measure.value,
        "cosine_mode": run.cosine_mode.value,
        "threshold": run.request.threshold,
        "classifications": sorted(run.request.classifications),
        "limit": run.request.limit,
        "precision": precision,
        "results": [result.as_dict() for result in run.results],
    }


def _metrics_payload(run_id: int, metrics: EvalMetrics) -> dict:
    payload: dict[str, Any] = {"run_id": run_id}
    payload.update(metrics.as_dict())
    return payload
