"""HTTP surface for worksheets; the contract the UI consumes.

Endpoints (bodies and responses use the document schema of docs/schema.md):

    POST /worksheets                  create from DSL source or a document
    GET  /worksheets                  list worksheet ids
    GET  /worksheets/{id}             fetch the latest saved document
    POST /worksheets/{id}/cells/{cid} edit one cell
    POST /worksheets/{id}/run         evaluate; fills computed values
    POST /worksheets/{id}/symbolize   substitute a letter for a datum

Engine failures during a run come back as an ``error`` event bound to the
failing cell; malformed requests are HTTP 4xx with the same structured
error object.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import EngineError
from .program import EvalError, parse
from .service import (
    SessionEvent,
    UnknownWorksheet,
    WorksheetStore,
    load,
    run,
    save,
    set_cell,
    symbolize_cell,
    worksheet_from_program,
)


class CreateRequest(BaseModel):
    source: Optional[str] = None
    title: str = ""
    problem: str = ""
    id: Optional[str] = None
    document: Optional[dict] = None


class EditRequest(BaseModel):
    content: str


class SymbolizeRequest(BaseModel):
    cell: str
    letter: str


def _error_body(err: Exception) -> dict:
    if isinstance(err, EvalError):
        return {
            "error": {
                "step": err.step,
                "cell": err.step,
                "code": err.code,
                "message": str(err),
            }
        }
    return {
        "error": {
            "step": None,
            "cell": None,
            "code": type(err).__name__,
            "message": str(err),
        }
    }


def create_app(store: WorksheetStore, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="namednum worksheets")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(UnknownWorksheet)
    async def missing_handler(request, err):
        return JSONResponse(_error_body(err), status_code=404)

    @app.exception_handler(EngineError)
    async def engine_handler(request, err):
        return JSONResponse(_error_body(err), status_code=422)

    @app.get("/worksheets")
    def list_worksheets():
        return {"worksheets": store.list_ids()}

    @app.post("/worksheets", status_code=201)
    def create_worksheet(body: CreateRequest):
        if body.document is not None:
            worksheet = load(body.document)
        elif body.source is not None:
            program = parse(body.source)
            worksheet = worksheet_from_program(
                program,
                title=body.title,
                problem_text=body.problem,
                worksheet_id=body.id or "worksheet",
            )
        else:
            return JSONResponse(
                {"error": {"step": None, "cell": None, "code": "BadRequest",
                           "message": "provide 'source' or 'document'"}},
                status_code=422,
            )
        store.put(worksheet)
        return save(worksheet)

    @app.get("/worksheets/{worksheet_id}")
    def get_worksheet(worksheet_id: str):
        return save(store.get(worksheet_id))

    @app.post("/worksheets/{worksheet_id}/cells/{cell_id}")
    def edit_cell(worksheet_id: str, cell_id: str, body: EditRequest):
        def action(w):
            updated = set_cell(w, cell_id, body.content)
            event = SessionEvent(
                "cell_edited",
                {"cell": cell_id, "content": body.content},
                updated.revision,
            )
            return updated, event

        worksheet, event = store.mutate(worksheet_id, action)
        return {"worksheet": save(worksheet), "event": event.to_json()}

    @app.post("/worksheets/{worksheet_id}/run")
    def run_worksheet(worksheet_id: str):
        worksheet, event = store.mutate(worksheet_id, run)
        return {"worksheet": save(worksheet), "event": event.to_json()}

    @app.post("/worksheets/{worksheet_id}/symbolize")
    def symbolize(worksheet_id: str, body: SymbolizeRequest):
        def action(w):
            updated = symbolize_cell(w, body.cell, body.letter)
            event = SessionEvent(
                "symbolized",
                {"cell": body.cell, "letter": body.letter},
                updated.revision,
            )
            return updated, event

        worksheet, event = store.mutate(worksheet_id, action)
        return {"worksheet": save(worksheet), "event": event.to_json()}

    if ui_dir is not None and ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
