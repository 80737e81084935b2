/** Client-side scenario session: tracks the server's authoritative state
 * and version, retries once on a version conflict, and keeps the last
 * error around for inline display instead of resetting forms. */

import { ApiError, Client } from "./api.js";
import type {
  AlternativeDoc,
  EnvelopeDoc,
  ErrorDoc,
  ReportDoc,
  ScenarioDoc,
  SessionResultDoc,
  StateDoc,
} from "./types.js";
import { intervalCards, latestSessionRecord, type IntervalCard } from "./render.js";

export class ScenarioSession {
  private id: string | null = null;
  private version = 0;
  private state: StateDoc | null = null;
  private scenario: ScenarioDoc | null = null;
  lastError: ErrorDoc | null = null;

  constructor(private readonly client: Client) {}

  get currentId(): string | null {
    return this.id;
  }

  get currentVersion(): number {
    return this.version;
  }

  get currentState(): StateDoc | null {
    return this.state;
  }

  get currentScenario(): ScenarioDoc | null {
    return this.scenario;
  }

  get done(): boolean {
    return this.state !== null && this.state.done;
  }

  async load(doc: ScenarioDoc): Promise<StateDoc> {
    const envelope = await this.guard(() => this.client.createScenario(doc));
    this.scenario = doc;
    this.adopt(envelope);
    return envelope.state;
  }

  /** Advance one stage. A stale-version rejection refreshes from the
   * server and retries exactly once; any other failure is surfaced and
   * leaves local state untouched. */
  async runStage(
    choices?: Record<string, AlternativeDoc>,
  ): Promise<StateDoc> {
    const id = this.requireId();
    const body = (version: number) => ({
      expected_version: version,
      ...(choices && Object.keys(choices).length > 0
        ? { human_choices: choices }
        : {}),
    });
    try {
      const envelope = await this.guard(() =>
        this.client.stepScenario(id, body(this.version)),
      );
      this.adopt(envelope);
      return envelope.state;
    } catch (error) {
      if (!(error instanceof ApiError) || error.body.code !== "VersionConflict") {
        throw error;
      }
    }
    const refreshed = await this.client.getScenario(id);
    this.adopt(refreshed);
    const envelope = await this.guard(() =>
      this.client.stepScenario(id, body(this.version)),
    );
    this.adopt(envelope);
    return envelope.state;
  }

  async refresh(): Promise<StateDoc> {
    const envelope = await this.guard(() =>
      this.client.getScenario(this.requireId()),
    );
    this.adopt(envelope);
    return envelope.state;
  }

  async report(): Promise<ReportDoc> {
    return this.guard(() => this.client.getReport(this.requireId()));
  }

  /** Session result currently on display (latest influence/final record). */
  displayedSession(): SessionResultDoc | null {
    if (this.state === null) return null;
    const record = latestSessionRecord(this.state);
    return record === null ? null : record.session;
  }

  cards(branchIndex = 0): IntervalCard[] {
    const session = this.displayedSession();
    return session === null ? [] : intervalCards(session, branchIndex);
  }

  private adopt(envelope: EnvelopeDoc): void {
    this.id = envelope.id;
    this.version = envelope.version;
    this.state = envelope.state;
    this.lastError = null;
  }

  private requireId(): string {
    if (this.id === null) throw new Error("no scenario loaded");
    return this.id;
  }

  private async guard<T>(call: () => Promise<T>): Promise<T> {
    try {
      return await call();
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = error.body;
      }
      throw error;
    }
  }
}
