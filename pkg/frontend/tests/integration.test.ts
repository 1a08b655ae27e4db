/** End-to-end checks against the real network service.
 *
 * A `wayward serve` process is started once for the whole file; each test
 * mounts the app in the DOM, drives it the way a user would, and verifies
 * the displayed numbers against direct service calls. */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { App } from "../src/app.js";
import { splitLayers } from "../src/types.js";

const PORT = 8901;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let client: ServiceClient;

async function until(cond: () => boolean | Promise<boolean>, ms = 60_000): Promise<void> {
  const start = Date.now();
  for (;;) {
    if (await cond()) return;
    if (Date.now() - start > ms) throw new Error("condition not met in time");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  expect(typeof fetch, "node's fetch must be available to reach the service").toBe("function");
  server = spawn(process.env.WAYWARD_BIN ?? "wayward", ["serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  client = new ServiceClient(BASE);
  await until(async () => {
    if (server.exitCode !== null) {
      throw new Error(`service exited early with code ${server.exitCode}`);
    }
    try {
      return (await client.health()).status === "ok";
    } catch {
      return false;
    }
  });
});

afterAll(() => {
  server.kill();
});

function mountApp(): { app: App; root: HTMLDivElement } {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  document.body.appendChild(root);
  return { app: new App(root, client), root };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("placing a POI on the map", () => {
  it("shows counts equal to a direct what-if call for the same snapped node", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();
    const sessionId = app.store.state.sessionId!;
    expect(sessionId).toBeTruthy();

    // Pick a non-POI node from the map layers and click its exact pixel.
    const layers = app.currentLayers()!;
    const poiNodes = new Set(app.store.state.lastReport!.pois.map((p) => p.node));
    const target = layers.nodes.find((n) => !poiNodes.has(n.id))!;
    const svg = root.querySelector<SVGSVGElement>("#map svg")!;
    const [x, y] = app.projector!.toXy(target.lon, target.lat);
    svg.dispatchEvent(new MouseEvent("click", { clientX: x, clientY: y, bubbles: true }));
    await app.settled();

    const pending = app.store.state.pendingEdit;
    expect(pending).not.toBeNull();
    expect(pending!.edit).toEqual({ add: target.id });

    // The same edit, asked of the service directly.
    const direct = await client.whatif(sessionId, { add: target.id });

    // Panel values must equal the direct response, number for number.
    const panelTotal = root.querySelector("#pending-panel tr.total .count")!.textContent;
    expect(panelTotal).toBe(String(direct.report.total));
    const rows = root.querySelectorAll("#pending-panel tr[data-node]");
    expect(rows).toHaveLength(direct.report.pois.length);
    for (const poi of direct.report.pois) {
      const row = root.querySelector(`#pending-panel tr[data-node="${poi.node}"]`)!;
      expect(row.querySelector(".count")!.textContent).toBe(String(poi.count));
    }
    const diffText = root.querySelector("#pending-panel .diff")!.textContent;
    const sign = direct.diff.delta > 0 ? "+" : "";
    expect(diffText).toBe(
      `${direct.diff.total_before} -> ${direct.diff.total_after} (${sign}${direct.diff.delta})`,
    );

    // What-if is stateless: the baseline on screen is untouched.
    expect(root.querySelector("#counts-panel tr.total .count")!.textContent).toBe(
      String(direct.diff.total_before),
    );
  });
});

describe("accepting a suggestion", () => {
  it("reproduces the plan's totals_after in the compare panel and on re-track", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();
    const sessionId = app.store.state.sessionId!;
    const baselineTotal = app.store.state.lastReport!.total;

    root.querySelector<HTMLButtonElement>("#suggest-btn")!.click();
    await app.settled();
    const plan = app.store.state.lastPlan!;
    expect(plan).toBeTruthy();
    expect(plan.totals_before).toBe(baselineTotal);
    expect(plan.totals_after).toBeLessThanOrEqual(plan.totals_before);
    expect(plan.moves.length).toBeGreaterThan(0);

    // The suggested moves are overlaid as arrows anchored on real nodes.
    for (const [from, to] of plan.moves) {
      expect(
        root.querySelector(`#map line.relocation[data-from="${from}"][data-to="${to}"]`),
      ).not.toBeNull();
    }

    root.querySelector<HTMLButtonElement>("#accept-plan-btn")!.click();
    await app.settled();

    // Compare panel: the after column equals the plan's promised total.
    const totals = root.querySelector('#compare-panel tr[data-role="totals"]')!;
    expect(totals.querySelector(".before")!.textContent).toBe(String(plan.totals_before));
    expect(totals.querySelector(".after")!.textContent).toBe(String(plan.totals_after));
    expect(root.querySelector("#compare-panel .plan-check.ok")).not.toBeNull();

    // Re-tracking on the service reproduces totals_after exactly.
    const retracked = await client.track(sessionId);
    expect(retracked.total).toBe(plan.totals_after);

    // Per-POI rows in the compare panel line up with the plan's after-counts.
    for (const poi of plan.per_poi_after) {
      const row = root.querySelector(`#compare-panel tr[data-label="${poi.label}"]`);
      expect(row, `row for ${poi.label}`).not.toBeNull();
      expect(row!.querySelector(".after")!.textContent).toBe(String(poi.count));
    }
  });
});

describe("map layers against the service report", () => {
  it("flags exactly report.total nodes when the inconsistency layer is on", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();
    const total = app.store.state.lastReport!.total;
    expect(root.querySelectorAll("#map circle.flagged")).toHaveLength(total);

    const box = root.querySelector<HTMLInputElement>('input[data-layer="inconsistency"]')!;
    box.click();
    await app.settled();
    expect(root.querySelectorAll("#map circle.flagged")).toHaveLength(0);
  });

  it("draws every node, marker and edge the layers endpoint returns", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();
    const sessionId = app.store.state.sessionId!;
    const fc = await client.layers(sessionId);
    const split = splitLayers(fc);
    expect(root.querySelectorAll("#map circle.node")).toHaveLength(split.nodes.length);
    expect(root.querySelectorAll("#map path.poi-marker")).toHaveLength(split.markers.length);
    expect(root.querySelectorAll("#map line.edge")).toHaveLength(split.edges.length);
  });
});

describe("suggestion arrows", () => {
  it("anchors each arrow on the exact nodes the service returned", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();

    await app.requestSuggestion();
    await app.settled();
    const plan = app.store.state.lastPlan!;
    expect(plan.moves.length).toBeGreaterThan(0);
    const [from, to] = plan.moves[0]!;

    const arrow = root.querySelector(
      `#map line.relocation[data-from="${from}"][data-to="${to}"]`,
    )!;
    expect(arrow).not.toBeNull();
    const origin = app.currentLayers()!.byId.get(from)!;
    const site = app.currentLayers()!.byId.get(to)!;
    const [ox, oy] = app.projector!.toXy(origin.lon, origin.lat);
    const [sx, sy] = app.projector!.toXy(site.lon, site.lat);
    expect(Number(arrow.getAttribute("x1"))).toBeCloseTo(ox, 6);
    expect(Number(arrow.getAttribute("y1"))).toBeCloseTo(oy, 6);
    expect(Number(arrow.getAttribute("x2"))).toBeCloseTo(sx, 6);
    expect(Number(arrow.getAttribute("y2"))).toBeCloseTo(sy, 6);
  });
});

describe("direction switching against the live service", () => {
  it("re-tracks under the new direction and keeps every number service-sourced", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();
    const sessionId = app.store.state.sessionId!;

    const select = root.querySelector<HTMLSelectElement>("#direction-select")!;
    select.value = "outward";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    await app.settled();

    expect(app.store.state.direction).toBe("O");
    const direct = await client.track(sessionId);
    expect(direct.direction).toBe("O");
    expect(root.querySelector("#counts-panel tr.total .count")!.textContent).toBe(
      String(direct.total),
    );
  });
});

describe("service errors", () => {
  it("surfaces a rejected edit inline", async () => {
    const { app, root } = mountApp();
    await app.createSession({ fixture: "grid12", direction: "inward" });
    await app.settled();

    // Click an existing POI to select it, then force a duplicate-add by
    // staging an add on another POI node via the direct method.
    const poiNode = app.store.state.lastReport!.pois[0]!.node;
    const marker = app.currentLayers()!.byId.get(poiNode)!;

    // A direct duplicate add must be rejected by the service...
    const err = await client
      .whatif(app.store.state.sessionId!, { add: poiNode })
      .catch((e: unknown) => e);
    expect((err as Error).message).toContain("duplicate");

    // ...and the UI click path turns POI clicks into selection instead.
    const svg = root.querySelector<SVGSVGElement>("#map svg")!;
    const [x, y] = app.projector!.toXy(marker.lon, marker.lat);
    svg.dispatchEvent(new MouseEvent("click", { clientX: x, clientY: y, bubbles: true }));
    await app.settled();
    expect(app.store.state.selectedPoi).toBe(poiNode);
    expect(root.querySelector<HTMLElement>("#error-banner")!.hidden).toBe(true);
  });
});
