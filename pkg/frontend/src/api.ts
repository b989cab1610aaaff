/** Thin client for the review service. Every byte shown in the UI comes
 * from these responses; nothing is computed locally. */

import type { LayoutConfig, Pair, PairStatus, Puzzle } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Network-level failure (service unreachable), as opposed to an HTTP error. */
export class OfflineError extends Error {}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new OfflineError(`service unreachable: ${String(err)}`);
    }
    const text = await resp.text();
    if (!resp.ok) {
      let message = text;
      try {
        const body = JSON.parse(text);
        message = body.detail ?? body.error ?? text;
      } catch {
        /* plain-text error body */
      }
      throw new ApiError(resp.status, String(message));
    }
    return JSON.parse(text) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createSession(): Promise<string> {
    const body = await this.post<{ session_id: string }>("/sessions", {});
    return body.session_id;
  }

  async runTextPipeline(
    sessionId: string,
    text: string,
    promptLang: string,
  ): Promise<Pair[]> {
    const body = await this.post<{ added: Pair[] }>(
      `/sessions/${sessionId}/pipeline/text`,
      { text, prompt_lang: promptLang },
    );
    return body.added;
  }

  async listPairs(sessionId: string, status?: PairStatus): Promise<Pair[]> {
    const query = status ? `?status=${status}` : "";
    const body = await this.request<{ pairs: Pair[] }>(
      `/sessions/${sessionId}/pairs${query}`,
    );
    return body.pairs;
  }

  async patchPair(
    sessionId: string,
    pairId: string,
    status: PairStatus,
  ): Promise<Pair> {
    return this.request<Pair>(`/sessions/${sessionId}/pairs/${pairId}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ status }),
    });
  }

  async createLayout(
    sessionId: string,
    config: LayoutConfig,
    preferred: string[],
  ): Promise<{ layout_id: string; puzzle: Puzzle }> {
    return this.post(`/sessions/${sessionId}/layouts`, { config, preferred });
  }

  async getLayout(sessionId: string, layoutId: string): Promise<Puzzle> {
    return this.request<Puzzle>(
      `/sessions/${sessionId}/layouts/${layoutId}?format=json`,
    );
  }
}
