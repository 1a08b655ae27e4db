/** Typed HTTP client for the street-network service.  All traffic is JSON;
 * errors surface as ServiceError carrying the HTTP status and the service's
 * `detail` message so the UI can show them inline. */

import type {
  CommitRequest,
  CreateSessionRequest,
  Edit,
  FeatureCollection,
  Plan,
  ReduceRequest,
  Report,
  SessionInfo,
  SnapResult,
  WhatifResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ServiceError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function detailOf(body: unknown, fallback: string): string {
  const detail = (body as { detail?: unknown } | null)?.detail;
  if (typeof detail === "string") return detail;
  if (Array.isArray(detail)) {
    // Request-validation failures arrive as a list of {loc, msg, type}.
    return detail
      .map((e) => (e && typeof e.msg === "string" ? String(e.msg) : JSON.stringify(e)))
      .join("; ");
  }
  return fallback;
}

export class ServiceClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    // Late-bound wrapper: browsers require fetch to be called on the window.
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? undefined : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceError(0, `service unreachable at ${this.baseUrl}: ${String(err)}`);
    }
    let data: unknown = null;
    try {
      data = await res.json();
    } catch {
      data = null;
    }
    if (!res.ok) throw new ServiceError(res.status, detailOf(data, `HTTP ${res.status}`));
    return data as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  createSession(body: CreateSessionRequest): Promise<SessionInfo> {
    return this.request("POST", "/sessions", body);
  }

  layers(
    sessionId: string,
    opts?: {
      bbox?: [number, number, number, number];
      centrality?: "auto" | "on" | "off";
    },
  ): Promise<FeatureCollection> {
    const params = new URLSearchParams();
    if (opts?.bbox) params.set("bbox", opts.bbox.join(","));
    if (opts?.centrality) params.set("centrality", opts.centrality);
    const qs = params.toString();
    return this.request("GET", `/sessions/${sessionId}/layers${qs ? `?${qs}` : ""}`);
  }

  snap(sessionId: string, lat: number, lon: number): Promise<SnapResult> {
    const params = new URLSearchParams({ lat: String(lat), lon: String(lon) });
    return this.request("GET", `/sessions/${sessionId}/snap?${params.toString()}`);
  }

  track(sessionId: string, direction?: string): Promise<Report> {
    return this.request(
      "POST",
      `/sessions/${sessionId}/track`,
      direction === undefined ? {} : { direction },
    );
  }

  whatif(sessionId: string, edit: Edit): Promise<WhatifResponse> {
    return this.request("POST", `/sessions/${sessionId}/whatif`, edit);
  }

  reduce(sessionId: string, body?: ReduceRequest): Promise<Plan> {
    return this.request("POST", `/sessions/${sessionId}/reduce`, body ?? {});
  }

  commit(sessionId: string, body: CommitRequest): Promise<Report> {
    return this.request("POST", `/sessions/${sessionId}/commit`, body);
  }
}
