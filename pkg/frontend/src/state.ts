/**
 * Session state and its pure reducers.
 *
 * The view is a function of the latest service document plus local edit
 * buffers.  Documents apply only when their revision is not older than the
 * one on screen, so a slow response can never roll the screen back.
 */

import type { SessionEvent, StructuredError, WorksheetDocument } from "./types.js";

export interface SessionState {
  doc: WorksheetDocument | null;
  /** Uncommitted edit text per cell id; marked in the view until run. */
  buffers: Record<string, string>;
  /** Evaluation/edit failure to pin to a cell, if any. */
  error: StructuredError | null;
  lastEvent: SessionEvent | null;
  busy: boolean;
}

export function initialState(): SessionState {
  return { doc: null, buffers: {}, error: null, lastEvent: null, busy: false };
}

export function applyDocument(
  state: SessionState,
  doc: WorksheetDocument,
): SessionState {
  if (state.doc && state.doc.id === doc.id && doc.revision < state.doc.revision) {
    return state; // stale response: discard
  }
  const buffers: Record<string, string> = {};
  for (const [cellId, text] of Object.entries(state.buffers)) {
    const cell = doc.cells.find((c) => c.id === cellId);
    if (cell && cell.content !== text) {
      buffers[cellId] = text; // still pending; keep the learner's typing
    }
  }
  return { ...state, doc, buffers, error: null };
}

export function applyEvent(state: SessionState, event: SessionEvent): SessionState {
  if (event.kind === "error") {
    return {
      ...state,
      lastEvent: event,
      error: event.payload as unknown as StructuredError,
    };
  }
  return { ...state, lastEvent: event, error: null };
}

export function setBuffer(
  state: SessionState,
  cellId: string,
  text: string,
): SessionState {
  const cell = state.doc?.cells.find((c) => c.id === cellId);
  if (cell && cell.content === text) {
    return clearBuffer(state, cellId);
  }
  return { ...state, buffers: { ...state.buffers, [cellId]: text } };
}

export function clearBuffer(state: SessionState, cellId: string): SessionState {
  if (!(cellId in state.buffers)) return state;
  const buffers = { ...state.buffers };
  delete buffers[cellId];
  return { ...state, buffers };
}

export function applyError(state: SessionState, error: StructuredError): SessionState {
  return { ...state, error };
}

export function setBusy(state: SessionState, busy: boolean): SessionState {
  return { ...state, busy };
}

/** The text a cell shows in its editor: pending edit or saved content. */
export function cellText(state: SessionState, cellId: string): string {
  const pending = state.buffers[cellId];
  if (pending !== undefined) return pending;
  return state.doc?.cells.find((c) => c.id === cellId)?.content ?? "";
}

export function hasPendingEdit(state: SessionState, cellId: string): boolean {
  return state.buffers[cellId] !== undefined;
}
