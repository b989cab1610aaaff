"""HTTP facade over the pipelines, review workflow, and layout generation.

Sessions persist as one JSON document per session under a data directory;
reloading the service reproduces responses byte-identically (modulo
timestamps). Mutations on a session are serialized per session id; reads
are lock-free.
"""

from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel, Field

from . import pipeline_keyword, pipeline_text, render
from .errors import (
    CwgenError,
    EmptyDocument,
    InsufficientAnswers,
    NoLayoutFound,
    ParseFailure,
)
from .gateway import Gateway
from .layout import CrosswordLayout, GeneratorConfig, generate
from .models import ClueAnswerPair, PairStatus
from .prompts import Lang

VALID_TRANSITIONS = {
    (PairStatus.CANDIDATE, PairStatus.ACCEPTED),
    (PairStatus.CANDIDATE, PairStatus.REJECTED),
    (PairStatus.ACCEPTED, PairStatus.REJECTED),
    (PairStatus.REJECTED, PairStatus.ACCEPTED),
}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class SessionStore:
    """One JSON file per session; per-session write lock."""

    def __init__(self, data_dir: str | Path) -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def create(self) -> dict[str, Any]:
        session = {
            "id": uuid.uuid4().hex,
            "created_at": _now(),
            "updated_at": _now(),
            "pairs": [],
            "layouts": [],
        }
        self.save(session)
        return session

    def load(self, session_id: str) -> dict[str, Any]:
        path = self._path(session_id)
        if not path.exists():
            raise HTTPException(404, f"unknown session {session_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def save(self, session: dict[str, Any]) -> None:
        session["updated_at"] = _now()
        path = self._path(session["id"])
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(
            json.dumps(session, ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        tmp.replace(path)


class TextPipelineBody(BaseModel):
    text: str
    prompt_lang: str = "ar"
    model: str = pipeline_text.DEFAULT_MODEL


class KeywordPipelineBody(BaseModel):
    answers: list[str]
    classifier: str = "heuristic"
    model: str = pipeline_keyword.DEFAULT_CLUE_MODEL


class PatchPairBody(BaseModel):
    status: str


class LayoutConfigBody(BaseModel):
    rows: int = 13
    cols: int = 13
    min_answers: int = 2
    min_fill_ratio: float = 1.0
    max_rebuilds: int = 10
    max_duration: float = 10.0
    seed: int = 0
    preferred_weight: float = 3.0
    stall_limit: int = 50
    remove_batch: int = 1


class LayoutBody(BaseModel):
    config: LayoutConfigBody = Field(default_factory=LayoutConfigBody)
    preferred: list[str] = Field(default_factory=list)


def create_app(
    data_dir: str | Path,
    transcript_path: Optional[str | Path] = None,
    ui_origin: str = "*",
) -> FastAPI:
    app = FastAPI(title="cwgen service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[ui_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(data_dir)
    app.state.store = store
    app.state.transcript_path = transcript_path

    def make_gateway() -> Gateway:
        gw = Gateway.from_env(app.state.transcript_path)
        if gw.mode == "live" and not gw.api_key:
            raise HTTPException(
                409, "model gateway unconfigured: no API key and no transcript"
            )
        return gw

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(CwgenError)
    async def internal_fault(request: Request, exc: CwgenError):
        return JSONResponse(
            status_code=500,
            content={"error": {"type": type(exc).__name__, "message": str(exc)}},
        )

    @app.post("/sessions", status_code=201)
    def create_session() -> dict:
        session = store.create()
        return {"session_id": session["id"]}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        session = store.load(session_id)
        return {
            "id": session["id"],
            "created_at": session["created_at"],
            "updated_at": session["updated_at"],
            "pair_count": len(session["pairs"]),
            "layout_count": len(session["layouts"]),
        }

    @app.post("/sessions/{session_id}/pipeline/text")
    def pipeline_text_endpoint(session_id: str, body: TextPipelineBody) -> dict:
        gateway = make_gateway()
        try:
            lang = Lang(body.prompt_lang)
        except ValueError:
            raise HTTPException(400, f"unknown prompt_lang {body.prompt_lang!r}")
        with store.lock(session_id):
            session = store.load(session_id)
            try:
                report = pipeline_text.run_path_a(
                    body.text, lang, gateway, model=body.model
                )
            except (EmptyDocument, ParseFailure) as exc:
                raise HTTPException(422, str(exc))
            offset = len(session["pairs"])
            added = []
            for i, pair in enumerate(report.passed):
                doc = pair.to_json()
                doc["id"] = f"p{offset + i + 1}"
                session["pairs"].append(doc)
                added.append(doc)
            store.save(session)
        return {"added": added, "report": report.summary()}

    @app.post("/sessions/{session_id}/pipeline/keywords")
    def pipeline_keywords_endpoint(session_id: str, body: KeywordPipelineBody) -> dict:
        if not body.answers:
            raise HTTPException(422, "answers list is empty")
        gateway = make_gateway()
        with store.lock(session_id):
            session = store.load(session_id)
            report, verdicts = pipeline_keyword.run_path_b(
                body.answers, body.model, body.classifier, gateway
            )
            verdict_by_id = {pair.id: v for pair, v in verdicts}
            offset = len(session["pairs"])
            added = []
            for i, pair in enumerate(report.passed):
                doc = pair.to_json()
                verdict = verdict_by_id.get(pair.id)
                if verdict is not None:
                    doc["verdict"] = verdict.to_json()
                doc["id"] = f"p{offset + i + 1}"
                session["pairs"].append(doc)
                added.append(doc)
            store.save(session)
        return {"added": added, "report": report.summary()}

    @app.get("/sessions/{session_id}/pairs")
    def list_pairs(session_id: str, status: Optional[str] = Query(None)) -> dict:
        session = store.load(session_id)
        pairs = session["pairs"]
        if status is not None:
            try:
                wanted = PairStatus(status).value
            except ValueError:
                raise HTTPException(400, f"unknown status {status!r}")
            pairs = [p for p in pairs if p["status"] == wanted]
        return {"pairs": pairs}

    @app.patch("/sessions/{session_id}/pairs/{pair_id}")
    def patch_pair(session_id: str, pair_id: str, body: PatchPairBody) -> dict:
        try:
            new_status = PairStatus(body.status)
        except ValueError:
            raise HTTPException(400, f"unknown status {body.status!r}")
        with store.lock(session_id):
            session = store.load(session_id)
            for doc in session["pairs"]:
                if doc["id"] == pair_id:
                    current = PairStatus(doc["status"])
                    if current == new_status:
                        return doc  # idempotent no-op
                    if (current, new_status) not in VALID_TRANSITIONS:
                        raise HTTPException(
                            422,
                            f"invalid transition {current.value} -> {new_status.value}",
                        )
                    doc["status"] = new_status.value
                    store.save(session)
                    return doc
        raise HTTPException(404, f"unknown pair {pair_id!r}")

    @app.post("/sessions/{session_id}/layouts", status_code=201)
    def create_layout(session_id: str, body: LayoutBody) -> dict:
        with store.lock(session_id):
            session = store.load(session_id)
            accepted = [
                ClueAnswerPair.from_json(doc)
                for doc in session["pairs"]
                if doc["status"] == PairStatus.ACCEPTED.value
            ]
            cfg = GeneratorConfig(**body.config.model_dump())
            if len(accepted) < cfg.min_answers:
                raise HTTPException(
                    422,
                    f"{len(accepted)} accepted pairs, need at least {cfg.min_answers}",
                )
            try:
                layout = generate(cfg, accepted, frozenset(body.preferred))
            except (InsufficientAnswers, NoLayoutFound) as exc:
                raise HTTPException(422, str(exc))
            numbering = render.number_clues(layout)
            puzzle = render.export_puzzle_json(
                layout, {p.id: p for p in accepted}, numbering
            )
            record = {
                "id": f"l{len(session['layouts']) + 1}",
                "created_at": _now(),
                "config": body.config.model_dump(),
                "preferred": body.preferred,
                "layout": layout.to_json(),
                "puzzle": puzzle,
            }
            session["layouts"].append(record)
            store.save(session)
        return {"layout_id": record["id"], "puzzle": puzzle}

    @app.get("/sessions/{session_id}/layouts/{layout_id}")
    def get_layout(
        session_id: str,
        layout_id: str,
        format: str = Query("json"),
        reveal: bool = Query(False),
    ) -> Response:
        session = store.load(session_id)
        record = next(
            (rec for rec in session["layouts"] if rec["id"] == layout_id), None
        )
        if record is None:
            raise HTTPException(404, f"unknown layout {layout_id!r}")
        if format == "json":
            return JSONResponse(record["puzzle"])
        layout = CrosswordLayout.from_json(record["layout"])
        if format == "text":
            return PlainTextResponse(render.render_text(layout, reveal=reveal))
        if format == "svg":
            numbering = render.number_clues(layout)
            return Response(
                render.export_svg(layout, numbering, reveal=reveal),
                media_type="image/svg+xml",
            )
        raise HTTPException(400, f"unknown format {format!r}")

    return app
