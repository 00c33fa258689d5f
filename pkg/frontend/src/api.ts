/**
 * Typed client for the worksheet endpoints.  One method per endpoint of
 * docs/schema.md; rejected requests surface the service's structured error.
 */

import type {
  MutationResponse,
  StructuredError,
  WorksheetDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly detail: StructuredError,
    readonly status: number,
  ) {
    super(detail.message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail: StructuredError = {
    step: null,
    cell: null,
    code: `HTTP${response.status}`,
    message: response.statusText,
  };
  try {
    const body = (await response.json()) as { error?: StructuredError };
    if (body.error) detail = body.error;
  } catch {
    // not JSON; keep the HTTP fallback
  }
  return new ApiError(detail, response.status);
}

export class WorksheetApi {
  constructor(readonly base: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  async listWorksheets(): Promise<string[]> {
    const body = await this.request<{ worksheets: string[] }>("GET", "/worksheets");
    return body.worksheets;
  }

  createFromSource(
    source: string,
    id?: string,
    title = "",
    problem = "",
  ): Promise<WorksheetDocument> {
    return this.request("POST", "/worksheets", { source, id, title, problem });
  }

  createFromDocument(document: WorksheetDocument): Promise<WorksheetDocument> {
    return this.request("POST", "/worksheets", { document });
  }

  getWorksheet(id: string): Promise<WorksheetDocument> {
    return this.request("GET", `/worksheets/${encodeURIComponent(id)}`);
  }

  editCell(id: string, cellId: string, content: string): Promise<MutationResponse> {
    return this.request(
      "POST",
      `/worksheets/${encodeURIComponent(id)}/cells/${encodeURIComponent(cellId)}`,
      { content },
    );
  }

  run(id: string): Promise<MutationResponse> {
    return this.request("POST", `/worksheets/${encodeURIComponent(id)}/run`);
  }

  symbolize(id: string, cell: string, letter: string): Promise<MutationResponse> {
    return this.request("POST", `/worksheets/${encodeURIComponent(id)}/symbolize`, {
      cell,
      letter,
    });
  }
}
