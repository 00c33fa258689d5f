/**
 * DOM view of a worksheet: problem box with red data cells, helpful-number
 * box, the question/answer list in blue, the green answer banner, and the
 * hamburger menu (Run, Substitute letter, Reset helpful number, Save, Load).
 *
 * The view is rebuilt from the session state on every change; everything

 * shown comes verbatim from the service document (typeset, never computed).
 */

import { typeset, typesetValue } from "./format.js";
import { cellText, hasPendingEdit, type SessionState } from "./state.js";
import { cellColor, type Cell, type WorksheetDocument } from "./types.js";

export interface Handlers {
  onBufferChange(cellId: string, text: string): void;
  onEditCommit(cellId: string, text: string): void;
  onRun(): void;
  onSubstitute(cellId: string): void;
  onResetHelpful(): void;
  onSave(): void;
  onLoadFile(file: File): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  html?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (html !== undefined) node.innerHTML = html;
  return node;
}

function editableCell(
  doc: Document,
  state: SessionState,
  cell: Cell,
  handlers: Handlers,
): HTMLElement {
  const wrap = el(doc, "span", `cell cell-${cellColor(cell.kind)} kind-${cell.kind}`);
  const input = el(doc, "input", "cell-input");
  input.value = cellText(state, cell.id);
  input.size = Math.max(6, input.value.length + 1);
  input.dataset.cell = cell.id;
  if (hasPendingEdit(state, cell.id)) wrap.classList.add("pending");
  input.addEventListener("input", () =>
    handlers.onBufferChange(cell.id, input.value),
  );
  input.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") {
      handlers.onEditCommit(cell.id, input.value);
    }
  });
  wrap.append(input);
  const substitute = el(doc, "button", "substitute-btn");
  substitute.textContent = "x→A";
  substitute.title = "Substitute a letter for this number";
  substitute.dataset.cell = cell.id;
  substitute.addEventListener("click", () => handlers.onSubstitute(cell.id));
  wrap.append(substitute);
  return wrap;
}

function computedBox(doc: Document, cell: Cell, text: string | null): HTMLElement {
  const box = el(
    doc,
    "span",
    `cell cell-${cellColor(cell.kind)} kind-${cell.kind}`,
    text === null ? "<em>not run yet</em>" : typesetValue(text),
  );
  box.dataset.cell = cell.id;
  return box;
}

function menu(doc: Document, state: SessionState, handlers: Handlers): HTMLElement {
  const details = el(doc, "details", "menu");
  details.append(el(doc, "summary", "menu-burger", "&#9776;"));
  const list = el(doc, "div", "menu-items");
  const actions: Array<[string, () => void]> = [
    ["Run", () => handlers.onRun()],
    ["Reset helpful number", () => handlers.onResetHelpful()],
    ["Save worksheet", () => handlers.onSave()],
  ];
  for (const [label, action] of actions) {
    const button = el(doc, "button", "menu-item");
    button.textContent = label;
    button.addEventListener("click", action);
    list.append(button);
  }
  const loadLabel = el(doc, "label", "menu-item menu-load");
  loadLabel.textContent = "Load worksheet";
  const file = el(doc, "input");
  file.type = "file";
  file.accept = "application/json";
  file.addEventListener("change", () => {
    const chosen = file.files?.[0];
    if (chosen) handlers.onLoadFile(chosen);
  });
  loadLabel.append(file);
  list.append(loadLabel);
  details.append(list);
  return details;
}

function errorBanner(doc: Document, state: SessionState): HTMLElement | null {
  if (!state.error) return null;
  const where = state.error.cell ? ` (step ${state.error.cell})` : "";
  return el(
    doc,
    "div",
    "error-banner",
    `<strong>${typeset(state.error.code)}${where}:</strong> ${typeset(
      state.error.message,
    )}`,
  );
}

export function renderWorksheet(
  container: HTMLElement,
  state: SessionState,
  handlers: Handlers,
): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  const worksheet = state.doc;
  if (!worksheet) {
    container.append(el(doc, "div", "placeholder", "No worksheet loaded yet."));
    return;
  }

  const root = el(doc, "div", "worksheet");
  root.append(el(doc, "div", "title-box", typeset(worksheet.title || worksheet.id)));

  const problem = el(doc, "div", "problem-box");
  const dataCells = worksheet.cells.filter((c) => c.kind === "data");
  const dataLine = el(doc, "div", "data-line");
  dataLine.append(el(doc, "strong", undefined, "Data: "));
  dataCells.forEach((cell, i) => {
    if (i > 0) dataLine.append(doc.createTextNode(", "));
    if (cell.label) dataLine.append(doc.createTextNode(`${cell.label}: `));
    dataLine.append(editableCell(doc, state, cell, handlers));
  });
  problem.append(dataLine);
  if (worksheet.problem) {
    problem.append(
      el(doc, "div", "question-line", `<strong>Question:</strong> ${typeset(worksheet.problem)}`),
    );
  }
  root.append(problem);

  const helpfulCells = worksheet.cells.filter((c) => c.kind === "helpful");
  if (helpfulCells.length > 0) {
    const helpful = el(doc, "div", "helpful-box");
    helpful.append(el(doc, "strong", undefined, "Helpful number: "));
    helpfulCells.forEach((cell, i) => {
      if (i > 0) helpful.append(doc.createTextNode(", "));
      if (cell.label) helpful.append(doc.createTextNode(`${cell.label}: `));
      helpful.append(editableCell(doc, state, cell, handlers));
    });
    root.append(helpful);
  }

  const steps = worksheet.cells.filter((c) => c.kind === "step");
  const questions = el(doc, "div", "questions-box");
  steps.forEach((cell, index) => {
    const row = el(doc, "div", "question-row");
    row.dataset.step = cell.id;
    row.append(
      el(
        doc,
        "div",
        "question-text",
        `<strong>Question ${index + 1}.</strong> ${typeset(cell.label ?? `compute ${cell.id}`)}`,
      ),
    );
    const answerLine = el(doc, "div", "answer-line");
    answerLine.append(el(doc, "span", "answer-word", "<strong>Answer:</strong> "));
    answerLine.append(computedBox(doc, cell, cell.computed));
    if (cell.computed !== null && cell.equation) {
      answerLine.append(
        el(doc, "span", "equation", ` = ${typesetValue(cell.equation)}`),
      );
    }
    row.append(answerLine);
    if (state.error && state.error.cell === cell.id) {
      row.append(
        el(doc, "div", "error-inline", `${typeset(state.error.code)}: ${typeset(state.error.message)}`),
      );
    }
    questions.append(row);
  });
  root.append(questions);

  const answerCell = worksheet.cells.find((c) => c.kind === "answer");
  if (answerCell) {
    const banner = el(doc, "div", "answer-box");
    banner.append(el(doc, "div", undefined, "The answer to the problem is"));
    banner.append(computedBox(doc, answerCell, answerCell.computed));
    const event = state.lastEvent;
    if (event && event.kind === "run_completed") {
      const eliminated = event.payload["eliminated"];
      if (Array.isArray(eliminated) && eliminated.length > 0) {
        banner.append(
          el(doc, "div", "note", `Helpful numbers eliminated: ${typeset(eliminated.join(", "))}`),
        );
      }
      const conditions = event.payload["conditions"];
      if (Array.isArray(conditions)) {
        for (const condition of conditions) {
          banner.append(el(doc, "div", "note", `Requires: ${typeset(String(condition))}`));
        }
      }
    }
    root.append(banner);
  }

  const footer = el(doc, "div", "footer-box");
  footer.append(
    el(
      doc,
      "span",
      "hint",
      "You may click on highlighted red numbers and change them! Press Run to recompute.",
    ),
  );
  const runButton = el(doc, "button", "run-btn");
  runButton.textContent = state.busy ? "Running…" : "Run";
  runButton.disabled = state.busy;
  runButton.addEventListener("click", () => handlers.onRun());
  footer.append(runButton);
  footer.append(menu(doc, state, handlers));
  root.append(footer);

  const banner = errorBanner(doc, state);
  if (banner && !(state.error && steps.some((c) => c.id === state.error?.cell))) {
    root.prepend(banner);
  }
  container.append(root);
}
