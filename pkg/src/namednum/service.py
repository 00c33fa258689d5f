"""Worksheets: the live-document layer over step programs.

A worksheet is the learner-facing view of one program: red editable cells
for data and helpful numbers, blue computed cells for the steps, one green
answer cell.  Editing a cell bumps the revision and invalidates computed
values; running re-evaluates through the engine (call-by-value when every
cell is concrete, call-by-name as soon as any cell holds a letter).  The
service layer adds no arithmetic of its own.

Worksheets persist as versioned JSON documents, one file per worksheet,
with every quantity kept as its exact DSL literal string; see
docs/schema.md for the wire contract.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional, Union

from .errors import EngineError
from .program import (
    DataDecl,
    EvalError,
    Lit,
    StepProgram,
    SymbolRef,
    eval_by_name,
    eval_by_value,
    format_program,
    parse,
    render_expr,
)
from .units import UnitExpr


class ServiceError(EngineError):
    pass


class NotEditable(ServiceError):
    pass


class SchemaVersionMismatch(ServiceError):
    pass


class DocumentError(ServiceError):
    """A worksheet document that does not satisfy the schema invariants."""


class UnknownWorksheet(ServiceError):
    pass


SCHEMA_VERSION = 1
ANSWER_CELL_ID = "@answer"


@dataclass(frozen=True)
class Cell:
    id: str
    kind: str  # data | helpful | step | answer
    label: Optional[str]
    content: str
    original: str
    unit: str
    editable: bool
    computed: Optional[str] = None
    equation: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "label": self.label,
            "content": self.content,
            "original": self.original,
            "unit": self.unit,
            "editable": self.editable,
            "computed": self.computed,
            "equation": self.equation,
        }

    @staticmethod
    def from_json(data: dict) -> "Cell":
        try:
            return Cell(
                id=data["id"],
                kind=data["kind"],
                label=data.get("label"),
                content=data["content"],
                original=data.get("original", data["content"]),
                unit=data.get("unit", ""),
                editable=data["editable"],
                computed=data.get("computed"),
                equation=data.get("equation"),
            )
        except KeyError as missing:
            raise DocumentError(f"cell is missing field {missing}") from None


@dataclass(frozen=True)
class SessionEvent:
    kind: str  # cell_edited | run_completed | symbolized | error
    payload: dict
    revision: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": self.payload, "revision": self.revision}


@dataclass(frozen=True)
class Worksheet:
    id: str
    title: str
    problem_text: str
    units: tuple[str, ...]
    target: str
    revision: int
    cells: tuple[Cell, ...]

    def cell(self, cell_id: str) -> Cell:
        for cell in self.cells:
            if cell.id == cell_id:
                return cell
        raise DocumentError(f"no cell {cell_id!r}")

    @property
    def answer_cell(self) -> Cell:
        return next(c for c in self.cells if c.kind == "answer")

    def _with_cells(self, cells, bump: bool) -> "Worksheet":
        return replace(
            self,
            cells=tuple(cells),
            revision=self.revision + 1 if bump else self.revision,
        )


def _decl_content(decl: DataDecl) -> str:
    if isinstance(decl.value, Lit):
        text = str(decl.value.magnitude)
        return f"{text} {decl.value.unit}" if decl.value.unit else text
    text = decl.value.letter
    return f"{text} {decl.value.unit}" if decl.value.unit else text


def worksheet_from_program(
    p: StepProgram,
    title: str = "",
    problem_text: str = "",
    worksheet_id: str = "worksheet",
) -> Worksheet:
    """One editable cell per declaration, one computed cell per step, and
    the answer cell for the return target."""
    units = []
    for line in format_program(p).splitlines():
        if line.startswith(("unit ", "rate ")):
            units.append(line)
    cells = []
    for decl in p.decls:
        content = _decl_content(decl)
        cells.append(
            Cell(
                id=decl.name,
                kind=decl.role,
                label=decl.label,
                content=content,
                original=content,
                unit=str(decl.value.unit),
                editable=True,
            )
        )
    for step in p.steps:
        content = render_expr(step.expr)
        cells.append(
            Cell(
                id=step.name,
                kind="step",
                label=step.question,
                content=content,
                original=content,
                unit="",
                editable=False,
            )
        )
    cells.append(
        Cell(
            id=ANSWER_CELL_ID,
            kind="answer",
            label="The answer to the problem",
            content=p.target,
            original=p.target,
            unit="",
            editable=False,
        )
    )
    return Worksheet(
        id=worksheet_id,
        title=title,
        problem_text=problem_text,
        units=tuple(units),
        target=p.target,
        revision=0,
        cells=tuple(cells),
    )


def worksheet_to_source(w: Worksheet) -> str:
    """Reassemble the DSL source; the engine, not the service, interprets it."""
    lines = list(w.units)
    for cell in w.cells:
        if cell.kind in ("data", "helpful"):
            lines.append(f"{cell.kind} {cell.id} = {cell.content}")
    for cell in w.cells:
        if cell.kind == "step":
            lines.append(f"{cell.id} := {cell.content}")
    lines.append(f"return {w.target}")
    return "\n".join(lines) + "\n"


def worksheet_program(w: Worksheet) -> StepProgram:
    return parse(worksheet_to_source(w))


def set_cell(w: Worksheet, cell_id: str, content: str) -> Worksheet:
    """Replace an editable cell's content with a quantity or a symbol.

    A bare letter keeps the cell's original unit, which is how substituting
    A for 24 min preserves the min annotation.  Computed values are
    invalidated until the next run.
    """
    target = w.cell(cell_id)
    if not target.editable:
        raise NotEditable(f"cell {cell_id!r} is computed, not editable")
    content = content.strip()
    if not content:
        raise DocumentError("cell content must not be empty")
    if any(ch in content for ch in "%;\n"):
        # cells hold one literal or symbol, never comments or more statements
        raise DocumentError(f"cell content {content!r} contains reserved characters")
    candidate = replace(target, content=content, computed=None, equation=None)
    probe = w._with_cells(
        [candidate if c.id == cell_id else c for c in w.cells], bump=False
    )
    program = worksheet_program(probe)  # raises on bad content
    decl = program.decl_named(cell_id)
    if isinstance(decl.value, SymbolRef) and not decl.value.unit and target.unit:
        # bare letter: keep the declared unit alongside it
        candidate = replace(candidate, content=f"{decl.value.letter} {target.unit}")
        probe = w._with_cells(
            [candidate if c.id == cell_id else c for c in w.cells], bump=False
        )
        worksheet_program(probe)
    invalidated = [
        replace(c, computed=None, equation=None)
        if c.id == cell_id or c.kind in ("step", "answer")
        else c
        for c in probe.cells
    ]
    return w._with_cells(invalidated, bump=True)


def symbolize_cell(w: Worksheet, cell_id: str, letter: str) -> Worksheet:
    """Substitute a letter for a datum or helpful number."""
    if not letter.isidentifier():
        raise DocumentError(f"{letter!r} is not a usable letter")
    return set_cell(w, cell_id, letter)


def run(w: Worksheet) -> tuple[Worksheet, SessionEvent]:
    """Make the cells alive: evaluate and fill every computed value.

    Uses call-by-name as soon as any data/helpful cell holds a letter,
    call-by-value otherwise.  Evaluation failures do not change the
    worksheet; they come back as an error event bound to the failing step's
    cell.  Re-running without edits returns the identical worksheet.
    """
    try:
        program = worksheet_program(w)
        symbolic = bool(program.symbolic_decl_names)
        computed: dict[str, tuple[str, Optional[str]]] = {}
        if symbolic:
            result = eval_by_name(program)
            values: dict[str, str] = {}
            for entry in result.trace:
                text = str(entry.value)
                if entry.unit:
                    text += f" {entry.unit}"
                values[entry.name] = text
            for decl in program.decls:
                values[decl.name] = _decl_content(decl)
            for step in program.steps:
                equation = render_expr(step.expr, resolve=lambda n: values[n])
                computed[step.name] = (values[step.name], equation)
            answer_text = str(result.answer)
            if result.answer_unit:
                answer_text += f" {result.answer_unit}"
            payload = {
                "mode": "name",
                "answer": answer_text,
                "eliminated": sorted(result.eliminated),
                "conditions": [str(c) for c in result.conditions],
            }
        else:
            trace = eval_by_value(program)
            values = {e.name: str(e.value) for e in trace.entries}
            for decl in program.decls:
                values[decl.name] = str(program.decl_quantity(decl))
            for step in program.steps:
                equation = render_expr(step.expr, resolve=lambda n: values[n])
                computed[step.name] = (values[step.name], equation)
            answer_text = str(trace.answer)
            payload = {"mode": "value", "answer": answer_text}
    except EngineError as err:
        event = SessionEvent("error", _error_payload(err), w.revision)
        return w, event

    new_cells = []
    for cell in w.cells:
        if cell.kind == "step":
            value, equation = computed[cell.id]
            new_cells.append(replace(cell, computed=value, equation=equation))
        elif cell.kind == "answer":
            new_cells.append(replace(cell, computed=answer_text, equation=None))
        else:
            new_cells.append(cell)
    changed = tuple(new_cells) != w.cells
    updated = w._with_cells(new_cells, bump=changed)
    return updated, SessionEvent("run_completed", payload, updated.revision)


def _error_payload(err: Exception) -> dict:
    if isinstance(err, EvalError):
        return {
            "step": err.step,
            "cell": err.step,
            "code": err.code,
            "message": str(err),
        }
    return {
        "step": None,
        "cell": None,
        "code": type(err).__name__,
        "message": str(err),
    }


# ---------------------------------------------------------------------------
# persistence


def save(w: Worksheet) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "id": w.id,
        "title": w.title,
        "problem": w.problem_text,
        "revision": w.revision,
        "units": list(w.units),
        "target": w.target,
        "cells": [c.to_json() for c in w.cells],
    }


def load(document: dict) -> Worksheet:
    if not isinstance(document, dict):
        raise DocumentError("worksheet document must be an object")
    version = document.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"unsupported document version {version!r}, expected {SCHEMA_VERSION}"
        )
    try:
        w = Worksheet(
            id=document["id"],
            title=document["title"],
            problem_text=document["problem"],
            units=tuple(document["units"]),
            target=document["target"],
            revision=document["revision"],
            cells=tuple(Cell.from_json(c) for c in document["cells"]),
        )
    except KeyError as missing:
        raise DocumentError(f"document is missing field {missing}") from None
    ids = [c.id for c in w.cells]
    if len(set(ids)) != len(ids):
        raise DocumentError("cell ids must be unique")
    if sum(1 for c in w.cells if c.kind == "answer") != 1:
        raise DocumentError("worksheet must have exactly one answer cell")
    for cell in w.cells:
        if cell.kind in ("data", "helpful") and not cell.editable:
            raise DocumentError(f"{cell.kind} cell {cell.id!r} must be editable")
        if cell.kind in ("step", "answer") and cell.editable:
            raise DocumentError(f"{cell.kind} cell {cell.id!r} must not be editable")
    return w


def dumps(w: Worksheet) -> str:
    """Canonical document text (used for byte-exact round-trip checks)."""
    return json.dumps(save(w), indent=2) + "\n"


def loads(text: str) -> Worksheet:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"not a JSON document: {err}") from None
    return load(document)


class WorksheetStore:
    """Directory-backed store, one JSON file per worksheet.

    Mutations are serialized per worksheet id; reads return the latest
    saved revision.  Events are kept in memory, ordered by revision.
    """

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()
        self._events: dict[str, list[SessionEvent]] = {}

    def _lock(self, worksheet_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(worksheet_id, threading.Lock())

    def _path(self, worksheet_id: str) -> Path:
        safe = worksheet_id.replace("/", "_")
        return self.directory / f"{safe}.json"

    def list_ids(self) -> list[str]:
        return sorted(path.stem for path in self.directory.glob("*.json"))

    def put(self, w: Worksheet) -> Worksheet:
        with self._lock(w.id):
            self._path(w.id).write_text(dumps(w))
        return w

    def get(self, worksheet_id: str) -> Worksheet:
        path = self._path(worksheet_id)
        if not path.exists():
            raise UnknownWorksheet(f"no worksheet {worksheet_id!r}")
        return loads(path.read_text())

    def events(self, worksheet_id: str) -> list[SessionEvent]:
        return list(self._events.get(worksheet_id, ()))

    def mutate(
        self, worksheet_id: str, action: Callable[[Worksheet], tuple[Worksheet, SessionEvent]]
    ) -> tuple[Worksheet, SessionEvent]:
        """Apply one mutation under the worksheet's lock and persist it."""
        with self._lock(worksheet_id):
            path = self._path(worksheet_id)
            if not path.exists():
                raise UnknownWorksheet(f"no worksheet {worksheet_id!r}")
            current = loads(path.read_text())
            updated, event = action(current)
            if updated.revision != current.revision:
                path.write_text(dumps(updated))
            self._events.setdefault(worksheet_id, []).append(event)
            return updated, event
