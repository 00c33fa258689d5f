/**
 * Browser entry point.  Same-origin by default; override the service with
 * ?api=http://host:port and pick a worksheet with ?ws=id.  With an empty
 * store a small create form posts DSL source to the service.
 */

import { WorksheetApi } from "./api.js";
import { WorksheetController } from "./controller.js";

function download(name: string, text: string): void {
  const anchor = document.createElement("a");
  anchor.href = URL.createObjectURL(new Blob([text], { type: "application/json" }));
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(anchor.href);
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new WorksheetApi(params.get("api") ?? "");
  const container = document.getElementById("app");
  if (!container) throw new Error("missing #app container");

  const ids = await api.listWorksheets();
  const chosen = params.get("ws") ?? ids[0];
  if (chosen) {
    const controller = new WorksheetController(
      api,
      container,
      chosen,
      (message, fallback) => window.prompt(message, fallback),
      download,
    );
    await controller.load();
    await controller.runAll();
    return;
  }

  container.innerHTML = `
    <div class="create-form">
      <h2>No worksheets yet</h2>
      <p>Paste a step-question program and create one:</p>
      <input id="new-id" placeholder="worksheet id" value="worksheet" />
      <input id="new-title" placeholder="title" />
      <textarea id="new-source" rows="14" spellcheck="false"></textarea>
      <button id="new-create">Create worksheet</button>
      <pre id="new-error" class="error-banner" hidden></pre>
    </div>`;
  const button = document.getElementById("new-create") as HTMLButtonElement;
  button.addEventListener("click", async () => {
    const id = (document.getElementById("new-id") as HTMLInputElement).value;
    const title = (document.getElementById("new-title") as HTMLInputElement).value;
    const source = (document.getElementById("new-source") as HTMLTextAreaElement).value;
    const errorBox = document.getElementById("new-error") as HTMLPreElement;
    try {
      const doc = await api.createFromSource(source, id, title);
      window.location.search = `?ws=${encodeURIComponent(doc.id)}`;
    } catch (err) {
      errorBox.hidden = false;
      errorBox.textContent = String(err);
    }
  });
}

void boot();
