import { describe, expect, it } from "vitest";

import { ServiceClient, ServiceError } from "../src/api.js";

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function recordingClient(
  status: number,
  responseBody: unknown,
): { client: ServiceClient; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const client = new ServiceClient("http://service", async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    });
    return new Response(JSON.stringify(responseBody), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
  return { client, calls };
}

describe("request construction", () => {
  it("posts session bodies as JSON", async () => {
    const { client, calls } = recordingClient(201, {
      session_id: "s1",
      n_nodes: 4,
      n_edges: 4,
      direction: "I",
      pois: [],
      baseline: { direction: "I", strict_unreachable: false, total: 0, pois: [] },
    });
    await client.createSession({ fixture: "grid12", direction: "inward" });
    expect(calls).toHaveLength(1);
    expect(calls[0]!.url).toBe("http://service/sessions");
    expect(calls[0]!.method).toBe("POST");
    expect(calls[0]!.body).toEqual({ fixture: "grid12", direction: "inward" });
  });

  it("encodes layer options in the query string", async () => {
    const { client, calls } = recordingClient(200, { type: "FeatureCollection", features: [] });
    await client.layers("s1", { bbox: [-47, -23, -46, -22], centrality: "on" });
    expect(calls[0]!.url).toBe("http://service/sessions/s1/layers?bbox=-47%2C-23%2C-46%2C-22&centrality=on");
    await client.layers("s1");
    expect(calls[1]!.url).toBe("http://service/sessions/s1/layers");
  });

  it("encodes snap coordinates in the query string", async () => {
    const { client, calls } = recordingClient(200, {
      node: 3,
      lat: -22.5,
      lon: -46.9,
      distance_m: 0,
    });
    const snapped = await client.snap("s1", -22.5, -46.9);
    expect(calls[0]!.url).toBe("http://service/sessions/s1/snap?lat=-22.5&lon=-46.9");
    expect(snapped.node).toBe(3);
  });

  it("sends track with and without a direction", async () => {
    const { client, calls } = recordingClient(200, {
      direction: "O",
      strict_unreachable: false,
      total: 0,
      pois: [],
    });
    await client.track("s1", "outward");
    expect(calls[0]!.body).toEqual({ direction: "outward" });
    await client.track("s1");
    expect(calls[1]!.body).toEqual({});
  });

  it("posts edits to whatif and commit", async () => {
    const { client, calls } = recordingClient(200, {
      direction: "I",
      strict_unreachable: false,
      total: 0,
      pois: [],
    });
    await client.commit("s1", { moves: [[1, 2]] });
    expect(calls[0]!.url).toBe("http://service/sessions/s1/commit");
    expect(calls[0]!.body).toEqual({ moves: [[1, 2]] });
  });

  it("defaults reduce to an empty body", async () => {
    const { client, calls } = recordingClient(200, {
      direction: "I",
      moves: [],
      steps: [],
      totals_before: 0,
      totals_after: 0,
      improved: false,
      per_poi_after: [],
      final_pois: [],
    });
    await client.reduce("s1");
    expect(calls[0]!.body).toEqual({});
    await client.reduce("s1", { movable: [7] });
    expect(calls[1]!.body).toEqual({ movable: [7] });
  });
});

describe("error mapping", () => {
  it("carries the status and the service detail string", async () => {
    const { client } = recordingClient(404, { detail: "unknown session nope" });
    const err = await client.track("nope").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect((err as ServiceError).status).toBe(404);
    expect((err as ServiceError).message).toBe("unknown session nope");
  });

  it("joins validation-error lists into one message", async () => {
    const { client } = recordingClient(422, {
      detail: [
        { loc: ["body", "timeout_s"], msg: "Input should be greater than 0", type: "greater_than" },
      ],
    });
    const err = await client.reduce("s1", { timeout_s: 0 }).catch((e: unknown) => e);
    expect((err as ServiceError).status).toBe(422);
    expect((err as ServiceError).message).toContain("greater than 0");
  });

  it("falls back to the HTTP status for non-JSON error bodies", async () => {
    const client = new ServiceClient("http://service", async () =>
      Promise.resolve(new Response("boom", { status: 500 })),
    );
    const err = await client.health().catch((e: unknown) => e);
    expect((err as ServiceError).status).toBe(500);
    expect((err as ServiceError).message).toBe("HTTP 500");
  });

  it("maps network failures to status 0", async () => {
    const client = new ServiceClient("http://service", async () => {
      throw new TypeError("fetch failed");
    });
    const err = await client.health().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect((err as ServiceError).status).toBe(0);
    expect((err as ServiceError).message).toContain("unreachable");
  });
});
