/** Thin typed client for the gazereview HTTP API.
 *
 * The fetch implementation is injectable so tests can run without a server.
 * Errors carry the HTTP status and the server's `error` message; 409s
 * additionally expose `currentVersion` for the reload-and-merge flow.
 */

import type {
  Interval,
  LabelsResponse,
  PlotResponse,
  RegionQueryResponse,
  RegionShape,
  SessionManifest,
  SystemName,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly currentVersion: number | null = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const message =
        typeof body?.error === "string"
          ? body.error
          : typeof body?.detail === "string"
            ? body.detail
            : `HTTP ${resp.status}`;
      const version =
        typeof body?.current_version === "number" ? body.current_version : null;
      throw new ApiError(resp.status, message, version);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown, method = "POST"): Promise<T> {
    return this.request<T>(path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  listSessions(): Promise<SessionManifest[]> {
    return this.request("/api/sessions");
  }

  getSession(id: string): Promise<SessionManifest> {
    return this.request(`/api/sessions/${encodeURIComponent(id)}`);
  }

  getPlot(id: string, includeUntrusted = false): Promise<PlotResponse> {
    const q = includeUntrusted ? "?include_untrusted=true" : "";
    return this.request(`/api/sessions/${encodeURIComponent(id)}/plot${q}`);
  }

  regionQuery(
    id: string,
    shape: RegionShape,
    includeUntrusted = false,
  ): Promise<RegionQueryResponse> {
    return this.post(`/api/sessions/${encodeURIComponent(id)}/region-query`, {
      shape,
      include_untrusted: includeUntrusted,
    });
  }

  getLabels(id: string, system: SystemName): Promise<LabelsResponse> {
    return this.request(
      `/api/sessions/${encodeURIComponent(id)}/labels/${system}`,
    );
  }

  putLabels(
    id: string,
    system: SystemName,
    intervals: Interval[],
    version: number,
  ): Promise<LabelsResponse> {
    return this.post(
      `/api/sessions/${encodeURIComponent(id)}/labels/${system}`,
      { intervals, version },
      "PUT",
    );
  }
}
