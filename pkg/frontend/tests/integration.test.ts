// @vitest-environment jsdom
//
// Drives the real client stack (api -> controller -> state -> render)
// against a live worksheet service spawned for the test run: the worksheet
// renders with the right colors, editing the helpful number and pressing
// Run keeps the green answer at 6 min, and substituting the letter A
// re-renders the answer as 8*A/(A + 8) min.

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { WorksheetApi } from "../src/api.js";
import { WorksheetController } from "../src/controller.js";

const PORT = 8765 + Math.floor(Math.random() * 200);
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/worksheets`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("worksheet service did not come up");
}

beforeAll(async () => {
  const store = mkdtempSync(join(tmpdir(), "namednum-ui-"));
  server = spawn(
    "python3",
    ["-m", "namednum.cli", "serve", "--port", String(PORT), "--store", store],
    { stdio: "ignore" },
  );
  await waitForService();
  const source = readFileSync(join(REPO_ROOT, "programs", "cherries.nn"), "utf8");
  const api = new WorksheetApi(BASE);
  await api.createFromSource(
    source,
    "cherries",
    "Bowl of cherries",
    "Working together, in what time will they fill the bowl?",
  );
});

afterAll(() => {
  server?.kill();
});

function makeController(letters: string[]): {
  controller: WorksheetController;
  container: HTMLElement;
} {
  document.body.innerHTML = '<div id="app"></div>';
  const container = document.getElementById("app") as HTMLElement;
  const controller = new WorksheetController(
    new WorksheetApi(BASE),
    container,
    "cherries",
    () => letters.shift() ?? null,
  );
  return { controller, container };
}

describe("worksheet client against a live service", () => {
  it("renders the cherries worksheet with the role colors", async () => {
    const { controller, container } = makeController([]);
    await controller.load();
    await controller.runAll();

    for (const id of ["A", "B", "C"]) {
      const input = container.querySelector(`input[data-cell="${id}"]`)!;
      expect(input.closest(".cell")!.className).toContain("cell-red");
    }
    for (const id of ["U", "V", "W", "T"]) {
      const box = container.querySelector(`span[data-cell="${id}"]`)!;
      expect(box.className).toContain("cell-blue");
    }
    const answer = container.querySelector('span[data-cell="@answer"]')!;
    expect(answer.className).toContain("cell-green");
    expect(answer.textContent).toContain("6 min");
    expect(container.textContent).toContain("What is Alice's picking speed?");
  });

  it("editing C from 72 to 48 and running leaves the green answer at 6 min", async () => {
    const { controller, container } = makeController([]);
    await controller.load();
    await controller.runAll();

    const input = container.querySelector('input[data-cell="C"]') as HTMLInputElement;
    input.value = "48 cherry";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    (container.querySelector(".run-btn") as HTMLButtonElement).click();
    await controller.enqueue(async () => {});

    const updatedC = container.querySelector('input[data-cell="C"]') as HTMLInputElement;
    expect(updatedC.value).toBe("48 cherry");
    const firstSpeed = container.querySelector('span[data-cell="U"]')!;
    expect(firstSpeed.textContent).toContain("2 cherry/min");
    const answer = container.querySelector('span[data-cell="@answer"]')!;
    expect(answer.className).toContain("cell-green");
    expect(answer.textContent).toContain("6 min");
  });

  it("substituting the letter A re-renders the answer as 8*A/(A + 8) min", async () => {
    const { controller, container } = makeController(["A"]);
    await controller.load();
    await controller.runAll();

    (
      container.querySelector('button.substitute-btn[data-cell="A"]') as HTMLButtonElement
    ).click();
    await controller.enqueue(async () => {});

    const letterCell = container.querySelector('input[data-cell="A"]') as HTMLInputElement;
    expect(letterCell.value).toBe("A min");
    const answer = container.querySelector('span[data-cell="@answer"]')!;
    expect(answer.className).toContain("cell-green");
    expect(answer.textContent).toContain("8·A/(A + 8)");
    expect(answer.textContent).toContain("min");
    // only A is a letter here, so the helper C stays concrete; the division
    // by the symbolic total speed still records its positivity note
    expect(container.textContent).toContain("Requires: A + 8 > 0");
  });

  it("a zero divisor comes back as an error pinned to the failing step", async () => {
    const { controller, container } = makeController([]);
    await controller.load();
    await controller.enqueue(async () => {});
    const input = container.querySelector('input[data-cell="A"]') as HTMLInputElement;
    input.value = "0 min";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    (container.querySelector(".run-btn") as HTMLButtonElement).click();
    await controller.enqueue(async () => {});

    const row = container.querySelector('[data-step="U"]')!;
    expect(row.querySelector(".error-inline")!.textContent).toContain("DivisionByZero");

    // putting 24 min back heals the worksheet
    const again = container.querySelector('input[data-cell="A"]') as HTMLInputElement;
    again.value = "24 min";
    again.dispatchEvent(new Event("input", { bubbles: true }));
    (container.querySelector(".run-btn") as HTMLButtonElement).click();
    await controller.enqueue(async () => {});
    expect(container.querySelector(".error-inline")).toBeNull();
  });
});
