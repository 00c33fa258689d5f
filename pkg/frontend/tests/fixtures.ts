import type { Cell, WorksheetDocument } from "../src/types.js";

export function cell(partial: Partial<Cell> & Pick<Cell, "id" | "kind">): Cell {
  return {
    label: null,
    content: "",
    original: partial.content ?? "",
    unit: "",
    editable: partial.kind === "data" || partial.kind === "helpful",
    computed: null,
    equation: null,
    ...partial,
  };
}

/** A cherries worksheet document as the service would emit it after a run. */
export function cherriesDocument(): WorksheetDocument {
  return {
    version: 1,
    id: "cherries",
    title: "Bowl of cherries",
    problem: "Working together, in what time will they fill the bowl?",
    revision: 1,
    units: ["unit min", "unit cherry"],
    target: "T",
    cells: [
      cell({ id: "A", kind: "data", content: "24 min", unit: "min",
             label: "Alice fills the bowl in A minutes" }),
      cell({ id: "B", kind: "data", content: "8 min", unit: "min",
             label: "Bob fills the bowl in B minutes" }),
      cell({ id: "C", kind: "helpful", content: "72 cherry", unit: "cherry",
             label: "let the bowl hold C cherries" }),
      cell({ id: "U", kind: "step", content: "C / A",
             label: "What is Alice's picking speed?",
             computed: "3 cherry/min", equation: "72 cherry / 24 min" }),
      cell({ id: "V", kind: "step", content: "C / B",
             label: "What is Bob's picking speed?",
             computed: "9 cherry/min", equation: "72 cherry / 8 min" }),
      cell({ id: "W", kind: "step", content: "U + V",
             label: "What is their picking speed working together?",
             computed: "12 cherry/min",
             equation: "3 cherry/min + 9 cherry/min" }),
      cell({ id: "T", kind: "step", content: "C / W",
             label: "In what time will they fill the bowl?",
             computed: "6 min", equation: "72 cherry / 12 cherry/min" }),
      cell({ id: "@answer", kind: "answer", content: "T",
             label: "The answer to the problem", computed: "6 min" }),
    ],
  };
}
