/** Thin typed client over the engine's HTTP endpoints. */

import type {
  AlternativeDoc,
  EnvelopeDoc,
  ErrorDoc,
  ReportDoc,
  ScenarioDoc,
  SessionRequestDoc,
  SessionResultDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ErrorDoc,
  ) {
    super(`${body.code}: ${body.message}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export interface StepBody {
  expected_version: number;
  human_choices?: Record<string, AlternativeDoc>;
}

export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  solveSession(body: SessionRequestDoc): Promise<SessionResultDoc> {
    return this.request("POST", "/api/session/solve", body);
  }

  createScenario(doc: ScenarioDoc): Promise<EnvelopeDoc> {
    return this.request("POST", "/api/scenarios", doc);
  }

  getScenario(id: string): Promise<EnvelopeDoc> {
    return this.request("GET", `/api/scenarios/${id}`);
  }

  stepScenario(id: string, body: StepBody): Promise<EnvelopeDoc> {
    return this.request("POST", `/api/scenarios/${id}/step`, body);
  }

  getReport(id: string): Promise<ReportDoc> {
    return this.request("GET", `/api/scenarios/${id}/report`);
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    let parsed: unknown = null;
    if (text !== "") {
      try {
        parsed = JSON.parse(text);
      } catch {
        parsed = null;
      }
    }
    if (!response.ok) {
      const error =
        parsed !== null && typeof parsed === "object" && "code" in parsed
          ? (parsed as ErrorDoc)
          : { code: `Http${response.status}`, message: text || "request failed" };
      throw new ApiError(response.status, error);
    }
    return parsed as T;
  }
}
