// Typed API client with newest-wins request sequencing: a response is
// delivered only if no newer request has been issued since it started.

import type { PresetsResponse, ScenarioDoc, SimulateResponse } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof payload.detail === "string"
      ? payload.detail
      : JSON.stringify(payload.detail ?? payload);
    throw new ApiError(response.status, detail);
  }
  return payload as T;
}

export class ApiClient {
  constructor(private readonly base = "") {}

  simulate(doc: ScenarioDoc): Promise<SimulateResponse> {
    return postJson<SimulateResponse>(`${this.base}/api/simulate`, doc);
  }

  async presets(): Promise<PresetsResponse> {
    const response = await fetch(`${this.base}/api/presets`);
    if (!response.ok) throw new ApiError(response.status, "failed to list presets");
    return (await response.json()) as PresetsResponse;
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(`${this.base}/api/health`);
      return response.ok;
    } catch {
      return false;
    }
  }
}

/** Monotone ticket dispenser; stale asynchronous results are discarded. */
export class NewestWins {
  private seq = 0;

  begin(): number {
    this.seq += 1;
    return this.seq;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.seq;
  }
}
