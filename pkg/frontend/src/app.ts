/** Application controller: wires the service client, the view state, the
 * SVG map, and the panels together.
 *
 * Workflow: load a session, read the map (centrality shading plus
 * inconsistency flags), click to stage POI edits (each click snaps to the
 * nearest network node on the service side), commit or discard, ask the
 * service for relocation suggestions, and accept or discard them.  Every
 * number on screen comes back from the service. */

import { ServiceClient, ServiceError } from "./api.js";
import { renderMap } from "./map.js";
import {
  renderComparePanel,
  renderCountsPanel,
  renderPendingPanel,
  renderPlanPanel,
} from "./panels.js";
import type { Projector } from "./project.js";
import { Store } from "./state.js";
import { splitLayers } from "./types.js";
import type { CreateSessionRequest, Edit, LayerName, Layers } from "./types.js";

/** The slice of the client the app uses; tests substitute a fake. */
export type ServiceApi = Pick<
  ServiceClient,
  "createSession" | "layers" | "snap" | "track" | "whatif" | "reduce" | "commit"
>;

interface DirectionChoice {
  value: string;
  letter: string;
  hint: string;
}

/** The three access directions, with the kind of public service each one
 * models as the tooltip. */
export const DIRECTIONS: DirectionChoice[] = [
  {
    value: "inward",
    letter: "I",
    hint: "Residents travel to the service — clinics, hospitals",
  },
  {
    value: "outward",
    letter: "O",
    hint: "The service travels out to residents — police response",
  },
  {
    value: "absolute",
    letter: "A",
    hint: "Round trips in both directions — schools",
  },
];

const LETTER_TO_NAME: Record<string, string> = {
  I: "inward",
  O: "outward",
  A: "absolute",
};

const LAYER_CHOICES: LayerName[] = ["centrality", "inconsistency", "partitions"];

export class App {
  readonly store = new Store();
  /** Projector of the most recent map render; tests use it to aim clicks. */
  projector: Projector | null = null;

  private layers: Layers | null = null;
  private chain: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    readonly client: ServiceApi,
  ) {
    this.buildSkeleton();
    this.store.subscribe(() => this.render());
    this.render();
  }

  /** Resolves when every interaction queued so far has finished. */
  settled(): Promise<void> {
    return this.chain;
  }

  /** The typed layers of the current map, as last fetched. */
  currentLayers(): Layers | null {
    return this.layers;
  }

  /** Queue an interaction; failures surface in the inline error banner. */
  private run(fn: () => Promise<void>): Promise<void> {
    const next = this.chain.then(fn).catch((err) => {
      const msg = err instanceof ServiceError ? err.message : String(err);
      this.store.set({ error: msg });
    });
    this.chain = next;
    return next;
  }

  // ----- session lifecycle -----

  createSession(body: CreateSessionRequest): Promise<void> {
    return this.run(async () => {
      const info = await this.client.createSession(body);
      this.store.set({
        sessionId: info.session_id,
        direction: info.baseline.direction,
        lastReport: info.baseline,
        pendingEdit: null,
        lastPlan: null,
        compare: null,
        selectedPoi: null,
        error: null,
      });
      this.q("#session-info").textContent =
        `session ${info.session_id}: ${info.n_nodes} nodes, ` +
        `${info.n_edges} edges, ${info.pois.length} POIs`;
      await this.reloadLayers();
    });
  }

  private async reloadLayers(): Promise<void> {
    const sid = this.store.state.sessionId;
    if (!sid) return;
    const fc = await this.client.layers(sid);
    this.layers = splitLayers(fc);
    this.render();
  }

  // ----- interactions -----

  /** A map click: snap to the nearest node, then select a POI, stage a
   * move of the selected POI, or stage a new POI there. */
  handleMapClick(lat: number, lon: number): Promise<void> {
    return this.run(() => this.placeAt(lat, lon));
  }

  private async placeAt(lat: number, lon: number): Promise<void> {
    const st = this.store.state;
    const sid = st.sessionId;
    if (!sid || !st.lastReport) return;
    const snapped = await this.client.snap(sid, lat, lon);
    const node = snapped.node;
    const poiNodes = new Set(st.lastReport.pois.map((p) => p.node));
    if (poiNodes.has(node)) {
      // Clicking a POI selects it; clicking the selected one deselects.
      this.store.set({ selectedPoi: st.selectedPoi === node ? null : node, error: null });
      return;
    }
    const labelField = this.root.querySelector<HTMLInputElement>("#poi-label");
    const label = labelField?.value.trim() || undefined;
    const edit: Edit =
      st.selectedPoi !== null
        ? { move: [st.selectedPoi, node] }
        : label
          ? { add: node, label }
          : { add: node };
    const whatif = await this.client.whatif(sid, edit);
    this.store.setPending(edit, whatif);
  }

  commitPending(): Promise<void> {
    return this.run(async () => {
      const st = this.store.state;
      if (!st.sessionId || !st.pendingEdit) return;
      const report = await this.client.commit(st.sessionId, st.pendingEdit.edit);
      this.store.commitPending(report);
      await this.reloadLayers();
    });
  }

  discardPending(): void {
    this.store.discardPending();
  }

  /** Ask the service for a relocation plan.  At most one request runs at a
   * time; further calls while busy are ignored (the button is disabled). */
  requestSuggestion(): Promise<void> {
    if (!this.store.beginReduce()) return Promise.resolve();
    return this.run(async () => {
      const sid = this.store.state.sessionId;
      if (!sid) {
        this.store.abortReduce();
        return;
      }
      try {
        const plan = await this.client.reduce(sid, {});
        this.store.finishReduce(plan);
      } catch (err) {
        this.store.abortReduce();
        throw err;
      }
    });
  }

  /** Commit the suggestion's moves; the commit's report becomes the
   * baseline and feeds the before/after comparison. */
  acceptPlan(): Promise<void> {
    return this.run(async () => {
      const st = this.store.state;
      const plan = st.lastPlan;
      if (!st.sessionId || !plan || !st.lastReport) return;
      if (plan.moves.length === 0) {
        this.store.discardPlan();
        return;
      }
      const before = st.lastReport;
      const after = await this.client.commit(st.sessionId, { moves: plan.moves });
      this.store.acceptPlan(before, after, plan);
      await this.reloadLayers();
    });
  }

  discardPlan(): void {
    this.store.discardPlan();
  }

  /** Stage the removal of the selected POI. */
  removeSelected(): Promise<void> {
    return this.run(async () => {
      const st = this.store.state;
      if (!st.sessionId || st.selectedPoi === null) return;
      const edit: Edit = { remove: st.selectedPoi };
      const whatif = await this.client.whatif(st.sessionId, edit);
      this.store.setPending(edit, whatif);
    });
  }

  setDirection(name: string): Promise<void> {
    return this.run(async () => {
      const sid = this.store.state.sessionId;
      if (!sid) return;
      const report = await this.client.track(sid, name);
      this.store.setDirection(report.direction, report);
      await this.reloadLayers();
    });
  }

  toggleLayer(layer: LayerName): void {
    this.store.toggleLayer(layer);
  }

  // ----- DOM -----

  private q<T extends HTMLElement>(selector: string): T {
    const node = this.root.querySelector<T>(selector);
    if (!node) throw new Error(`missing element ${selector}`);
    return node;
  }

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <div class="planner">
        <form id="create-form">
          <label>fixture
            <input id="fixture-input" value="grid12" list="fixture-names">
          </label>
          <datalist id="fixture-names">
            <option value="grid12"></option>
            <option value="case_oversized"></option>
            <option value="case_adjacent"></option>
            <option value="three_node"></option>
            <option value="l_shape"></option>
          </datalist>
          <label>seed <input id="seed-input" type="number" placeholder="default"></label>
          <label>direction <select id="create-direction"></select></label>
          <details>
            <summary>paste a network instead</summary>
            <textarea id="netgeo-input" rows="6"
              placeholder="N node lat lon / E src dst [weight] / P node [label]"></textarea>
          </details>
          <button id="create-btn" type="submit">Load session</button>
        </form>
        <div id="workspace" hidden>
          <div id="toolbar">
            <span id="session-info"></span>
            <label>direction <select id="direction-select"></select></label>
            <span id="layer-toggles"></span>
            <label>new POI label <input id="poi-label" value=""></label>
            <button id="remove-btn" type="button" disabled>Remove selected POI</button>
            <button id="suggest-btn" type="button">Suggest relocations</button>
          </div>
          <div id="error-banner" role="alert" hidden></div>
          <div id="map"></div>
          <div id="panels"></div>
        </div>
      </div>`;

    for (const selectId of ["#create-direction", "#direction-select"]) {
      const select = this.q<HTMLSelectElement>(selectId);
      for (const d of DIRECTIONS) {
        const option = document.createElement("option");
        option.value = d.value;
        option.textContent = d.value;
        option.title = d.hint;
        select.appendChild(option);
      }
      select.title = DIRECTIONS.map((d) => `${d.value}: ${d.hint}`).join("\n");
    }

    const toggles = this.q("#layer-toggles");
    for (const layer of LAYER_CHOICES) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.dataset.layer = layer;
      box.checked = this.store.state.visibleLayers.has(layer);
      box.addEventListener("change", () => this.toggleLayer(layer));
      label.append(box, document.createTextNode(layer));
      toggles.appendChild(label);
    }

    this.q<HTMLFormElement>("#create-form").addEventListener("submit", (ev) => {
      ev.preventDefault();
      const fixture = this.q<HTMLInputElement>("#fixture-input").value.trim();
      const netgeo = this.q<HTMLTextAreaElement>("#netgeo-input").value;
      const seedRaw = this.q<HTMLInputElement>("#seed-input").value.trim();
      const direction = this.q<HTMLSelectElement>("#create-direction").value;
      const body: CreateSessionRequest = { direction };
      if (netgeo.trim()) body.netgeo = netgeo;
      else if (fixture) body.fixture = fixture;
      if (seedRaw && body.fixture) body.seed = Number(seedRaw);
      void this.createSession(body);
    });

    this.q<HTMLSelectElement>("#direction-select").addEventListener("change", (ev) => {
      void this.setDirection((ev.target as HTMLSelectElement).value);
    });
    this.q<HTMLButtonElement>("#suggest-btn").addEventListener("click", () => {
      void this.requestSuggestion();
    });
    this.q<HTMLButtonElement>("#remove-btn").addEventListener("click", () => {
      void this.removeSelected();
    });
  }

  private render(): void {
    const st = this.store.state;

    const banner = this.q("#error-banner");
    banner.hidden = st.error === null;
    banner.textContent = st.error ?? "";

    this.q("#workspace").hidden = st.sessionId === null;
    this.q("#create-form").hidden = st.sessionId !== null;

    const suggest = this.q<HTMLButtonElement>("#suggest-btn");
    suggest.disabled = st.reduceInFlight || st.sessionId === null;
    suggest.textContent = st.reduceInFlight ? "Suggesting…" : "Suggest relocations";
    this.q<HTMLButtonElement>("#remove-btn").disabled = st.selectedPoi === null;

    const select = this.q<HTMLSelectElement>("#direction-select");
    select.value = LETTER_TO_NAME[st.direction] ?? st.direction;
    for (const box of this.root.querySelectorAll<HTMLInputElement>("#layer-toggles input")) {
      box.checked = st.visibleLayers.has(box.dataset.layer as LayerName);
    }

    const mapHost = this.q("#map");
    mapHost.innerHTML = "";
    this.projector = null;
    if (this.layers) {
      const rendered = renderMap(this.layers, {
        visibleLayers: st.visibleLayers,
        poiLabels: st.lastReport?.pois.map((p) => p.label) ?? [],
        planMoves: st.lastPlan?.moves ?? [],
        pendingEdit: st.pendingEdit?.edit ?? null,
        selectedPoi: st.selectedPoi,
        onClick: (lat, lon) => {
          void this.handleMapClick(lat, lon);
        },
      });
      mapHost.appendChild(rendered.svg);
      this.projector = rendered.projector;
    }

    const panels = this.q("#panels");
    panels.innerHTML = "";
    if (st.lastReport) panels.appendChild(renderCountsPanel(st.lastReport));
    if (st.pendingEdit) {
      panels.appendChild(
        renderPendingPanel(
          st.pendingEdit,
          () => void this.commitPending(),
          () => this.discardPending(),
        ),
      );
    }
    if (st.lastPlan) {
      panels.appendChild(
        renderPlanPanel(
          st.lastPlan,
          () => void this.acceptPlan(),
          () => this.discardPlan(),
        ),
      );
    }
    if (st.compare) panels.appendChild(renderComparePanel(st.compare));
  }
}
