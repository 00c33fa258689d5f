import { describe, expect, it } from "vitest";

import {
  applyDocument,
  applyEvent,
  cellText,
  clearBuffer,
  hasPendingEdit,
  initialState,
  setBuffer,
} from "../src/state.js";
import { cherriesDocument } from "./fixtures.js";

describe("document application", () => {
  it("applies newer revisions and discards stale ones", () => {
    const doc = cherriesDocument();
    let state = applyDocument(initialState(), doc);
    expect(state.doc?.revision).toBe(1);

    const newer = { ...doc, revision: 3 };
    state = applyDocument(state, newer);
    expect(state.doc?.revision).toBe(3);

    const stale = { ...doc, revision: 2 };
    state = applyDocument(state, stale);
    expect(state.doc?.revision).toBe(3); // unchanged
  });

  it("drops buffers that the new document already reflects", () => {
    const doc = cherriesDocument();
    let state = applyDocument(initialState(), doc);
    state = setBuffer(state, "C", "48 cherry");
    expect(hasPendingEdit(state, "C")).toBe(true);

    const committed = {
      ...doc,
      revision: 2,
      cells: doc.cells.map((c) =>
        c.id === "C" ? { ...c, content: "48 cherry" } : c,
      ),
    };
    state = applyDocument(state, committed);
    expect(hasPendingEdit(state, "C")).toBe(false);
    expect(cellText(state, "C")).toBe("48 cherry");
  });
});

describe("edit buffers", () => {
  it("shows the buffer until cleared", () => {
    let state = applyDocument(initialState(), cherriesDocument());
    expect(cellText(state, "C")).toBe("72 cherry");
    state = setBuffer(state, "C", "48 cherry");
    expect(cellText(state, "C")).toBe("48 cherry");
    state = clearBuffer(state, "C");
    expect(cellText(state, "C")).toBe("72 cherry");
  });

  it("typing the saved content back clears the pending mark", () => {
    let state = applyDocument(initialState(), cherriesDocument());
    state = setBuffer(state, "C", "48 cherry");
    state = setBuffer(state, "C", "72 cherry");
    expect(hasPendingEdit(state, "C")).toBe(false);
  });
});

describe("events", () => {
  it("keeps the error from an error event and clears it on success", () => {
    let state = applyDocument(initialState(), cherriesDocument());
    state = applyEvent(state, {
      kind: "error",
      payload: { step: "U", cell: "U", code: "DivisionByZero", message: "step U" },
      revision: 1,
    });
    expect(state.error?.cell).toBe("U");
    state = applyEvent(state, {
      kind: "run_completed",
      payload: { mode: "value", answer: "6 min" },
      revision: 2,
    });
    expect(state.error).toBeNull();
  });
});
