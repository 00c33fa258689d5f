/**
 * Wires the API client, the state reducers and the renderer together.
 *
 * Requests go through a single promise queue, so mutations never overlap
 * and responses apply in order; a stale document (older revision) is
 * discarded by the reducer.  A rejected edit keeps the learner's typing on
 * screen next to the error.
 */

import { ApiError, WorksheetApi } from "./api.js";
import { renderWorksheet, type Handlers } from "./render.js";
import {
  applyDocument,
  applyError,
  applyEvent,
  clearBuffer,
  initialState,
  setBuffer,
  setBusy,
  type SessionState,
} from "./state.js";
import type { MutationResponse, WorksheetDocument } from "./types.js";

export type Prompter = (message: string, fallback?: string) => string | null;

export class WorksheetController {
  state: SessionState = initialState();
  private queue: Promise<void> = Promise.resolve();

  constructor(
    readonly api: WorksheetApi,
    private readonly container: HTMLElement,
    private worksheetId: string,
    private readonly prompter: Prompter,
    private readonly download: (name: string, text: string) => void = () => {},
  ) {}

  // -- state plumbing

  private update(next: SessionState): void {
    this.state = next;
    this.rerender();
  }

  rerender(): void {
    renderWorksheet(this.container, this.state, this.handlers());
  }

  private applyMutation(response: MutationResponse): void {
    let next = applyDocument(this.state, response.worksheet);
    next = applyEvent(next, response.event);
    this.update(next);
  }

  private failWith(err: unknown): void {
    if (err instanceof ApiError) {
      this.update(applyError(this.state, err.detail));
    } else {
      this.update(
        applyError(this.state, {
          step: null,
          cell: null,
          code: "NetworkError",
          message: String(err),
        }),
      );
    }
  }

  /** Serialize all requests; each task sees the state its predecessors left. */
  enqueue(task: () => Promise<void>): Promise<void> {
    this.queue = this.queue
      .then(() => {
        this.update(setBusy(this.state, true));
        return task();
      })
      .catch((err) => this.failWith(err))
      .finally(() => this.update(setBusy(this.state, false)));
    return this.queue;
  }

  // -- operations

  load(): Promise<void> {
    return this.enqueue(async () => {
      const doc = await this.api.getWorksheet(this.worksheetId);
      this.update(applyDocument(this.state, doc));
    });
  }

  /** Push every pending edit buffer to the service, in cell order. */
  private async commitBuffers(): Promise<void> {
    const pending = Object.entries(this.state.buffers);
    for (const [cellId, text] of pending) {
      const response = await this.api.editCell(this.worksheetId, cellId, text);
      this.update(clearBuffer(this.state, cellId));
      this.applyMutation(response);
    }
  }

  /** The Run button: commit edits, then make the cells alive. */
  runAll(): Promise<void> {
    return this.enqueue(async () => {
      await this.commitBuffers();
      this.applyMutation(await this.api.run(this.worksheetId));
    });
  }

  /** Enter in a cell: send this edit, then run (edit-and-run). */
  editAndRun(cellId: string, text: string): Promise<void> {
    return this.enqueue(async () => {
      const response = await this.api.editCell(this.worksheetId, cellId, text);
      this.update(clearBuffer(this.state, cellId));
      this.applyMutation(response);
      this.applyMutation(await this.api.run(this.worksheetId));
    });
  }

  /** Substitute a letter for a datum, then run to show the symbolic trace. */
  substitute(cellId: string, letter: string): Promise<void> {
    return this.enqueue(async () => {
      this.applyMutation(await this.api.symbolize(this.worksheetId, cellId, letter));
      this.applyMutation(await this.api.run(this.worksheetId));
    });
  }

  /** Put every helpful cell back to the value it was created with. */
  resetHelpful(): Promise<void> {
    return this.enqueue(async () => {
      const doc = this.state.doc;
      if (!doc) return;
      for (const cell of doc.cells) {
        if (cell.kind === "helpful" && cell.content !== cell.original) {
          this.applyMutation(
            await this.api.editCell(this.worksheetId, cell.id, cell.original),
          );
        }
      }
      this.applyMutation(await this.api.run(this.worksheetId));
    });
  }

  loadDocument(document: WorksheetDocument): Promise<void> {
    return this.enqueue(async () => {
      const created = await this.api.createFromDocument(document);
      this.worksheetId = created.id;
      this.update(applyDocument({ ...initialState(), busy: this.state.busy }, created));
    });
  }

  // -- view handlers

  handlers(): Handlers {
    return {
      onBufferChange: (cellId, text) => {
        // no rerender while typing: the input already shows the keystrokes
        this.state = setBuffer(this.state, cellId, text);
      },
      onEditCommit: (cellId, text) => {
        this.state = setBuffer(this.state, cellId, text);
        void this.editAndRun(cellId, text);
      },
      onRun: () => void this.runAll(),
      onSubstitute: (cellId) => {
        const letter = this.prompter(
          `Substitute a letter for ${cellId}`,
          cellId,
        );
        if (letter) void this.substitute(cellId, letter.trim());
      },
      onResetHelpful: () => void this.resetHelpful(),
      onSave: () => {
        if (this.state.doc) {
          this.download(
            `${this.state.doc.id}.json`,
            JSON.stringify(this.state.doc, null, 2) + "\n",
          );
        }
      },
      onLoadFile: (file) => {
        void file.text().then((text) => {
          const doc = JSON.parse(text) as WorksheetDocument;
          return this.loadDocument(doc);
        });
      },
    };
  }
}
