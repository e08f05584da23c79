/** Thin client for the session service; fetch is injectable for tests. */

import type { MessageResponse, SessionResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class UpstreamError extends Error {
  readonly retryable: boolean;

  constructor(message: string, retryable: boolean) {
    super(message);
    this.retryable = retryable;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl: FetchLike = fetch.bind(globalThis)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      const error = (body as { error?: { message?: string; retryable?: boolean } }).error;
      throw new UpstreamError(error?.message ?? `HTTP ${response.status}`,
                              error?.retryable ?? false);
    }
    return body as T;
  }

  createSession(): Promise<SessionResponse> {
    return this.request<SessionResponse>("/sessions", { method: "POST" });
  }

  sendMessage(sessionId: string, text: string): Promise<MessageResponse> {
    return this.request<MessageResponse>(`/sessions/${sessionId}/messages`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ version: 1, text }),
    });
  }

  resume(sessionId: string): Promise<SessionResponse> {
    return this.request<SessionResponse>(`/sessions/${sessionId}/resume`, {
      method: "POST",
    });
  }

  getData<T>(dataset: string, lat: number, lon: number): Promise<T> {
    const params = new URLSearchParams({ lat: String(lat), lon: String(lon) });
    return this.request<T>(`/data/${dataset}?${params}`);
  }
}
