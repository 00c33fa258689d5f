/**
 * Wire types for the worksheet service, mirroring docs/schema.md verbatim.
 * Every number or formula travels as a canonical string; the client never
 * computes anything itself.
 */

export type CellKind = "data" | "helpful" | "step" | "answer";

export interface Cell {
  id: string;
  kind: CellKind;
  label: string | null;
  content: string;
  original: string;
  unit: string;
  editable: boolean;
  computed: string | null;
  equation: string | null;
}

export interface WorksheetDocument {
  version: number;
  id: string;
  title: string;
  problem: string;
  revision: number;
  units: string[];
  target: string;
  cells: Cell[];
}

export interface StructuredError {
  step: string | null;
  cell: string | null;
  code: string;
  message: string;
}

export type EventKind = "cell_edited" | "run_completed" | "symbolized" | "error";

export interface SessionEvent {
  kind: EventKind;
  payload: Record<string, unknown>;
  revision: number;
}

export interface MutationResponse {
  worksheet: WorksheetDocument;
  event: SessionEvent;
}

/** The role colors of the worksheet: red edits, blue computes, green answers. */
export function cellColor(kind: CellKind): "red" | "blue" | "green" {
  switch (kind) {
    case "data":
    case "helpful":
      return "red";
    case "step":
      return "blue";
    case "answer":
      return "green";
  }
}
