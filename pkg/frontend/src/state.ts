/** View state and its transitions.
 *
 * Invariants encoded here:
 *  - the pending edit is cleared by commit and by discard, never silently
 *    carried across a direction change;
 *  - at most one reduce request is in flight per session (beginReduce is
 *    the single gate);
 *  - lastReport always holds the service's latest committed baseline.
 */

import type { Edit, LayerName, Plan, Report, WhatifResponse } from "./types.js";

/** A proposed POI edit with the service's what-if verdict, awaiting
 * commit or discard. */
export interface PendingEdit {
  edit: Edit;
  whatif: WhatifResponse;
}

export interface CompareData {
  before: Report;
  after: Report;
  /** The suggestion's promised total, when the comparison came from
   * accepting a relocation plan. */
  planTotalsAfter: number | null;
}

export interface ViewState {
  sessionId: string | null;
  visibleLayers: Set<LayerName>;
  /** Canonical direction letter reported by the service (I, O or A). */
  direction: string;
  pendingEdit: PendingEdit | null;
  lastReport: Report | null;
  lastPlan: Plan | null;
  selectedPoi: number | null;
  reduceInFlight: boolean;
  error: string | null;
  compare: CompareData | null;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    visibleLayers: new Set<LayerName>(["centrality", "inconsistency"]),
    direction: "I",
    pendingEdit: null,
    lastReport: null,
    lastPlan: null,
    selectedPoi: null,
    reduceInFlight: false,
    error: null,
    compare: null,
  };
}

export class Store {
  state: ViewState = initialState();
  private listeners: Array<() => void> = [];

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const l of this.listeners) l();
  }

  set(patch: Partial<ViewState>): void {
    Object.assign(this.state, patch);
    this.emit();
  }

  /** Stage an edit together with the service's what-if result. */
  setPending(edit: Edit, whatif: WhatifResponse): void {
    this.set({ pendingEdit: { edit, whatif }, error: null });
  }

  /** Apply a committed edit: the service's new baseline replaces the
   * report and the pending edit is cleared. */
  commitPending(newBaseline: Report): void {
    this.set({ lastReport: newBaseline, pendingEdit: null, selectedPoi: null });
  }

  /** Drop the staged edit without applying it. */
  discardPending(): void {
    this.set({ pendingEdit: null, selectedPoi: null });
  }

  /** Reserve the single reduce slot; false when one is already running. */
  beginReduce(): boolean {
    if (this.state.reduceInFlight) return false;
    this.set({ reduceInFlight: true, error: null });
    return true;
  }

  /** Store the suggestion and release the reduce slot. */
  finishReduce(plan: Plan): void {
    this.set({ reduceInFlight: false, lastPlan: plan });
  }

  /** Release the reduce slot without a result (failed request). */
  abortReduce(): void {
    this.set({ reduceInFlight: false });
  }

  /** Accept a suggestion: the commit's report becomes the baseline and the
   * before/after pair feeds the comparison panel. */
  acceptPlan(before: Report, after: Report, plan: Plan): void {
    this.set({
      lastReport: after,
      lastPlan: null,
      pendingEdit: null,
      selectedPoi: null,
      compare: { before, after, planTotalsAfter: plan.totals_after },
    });
  }

  discardPlan(): void {
    this.set({ lastPlan: null });
  }

  toggleLayer(layer: LayerName): void {
    const layers = new Set(this.state.visibleLayers);
    if (layers.has(layer)) layers.delete(layer);
    else layers.add(layer);
    this.set({ visibleLayers: layers });
  }

  /** Direction switches invalidate staged numbers: the pending edit and any
   * open suggestion are dropped along with the stale selection. */
  setDirection(direction: string, report: Report): void {
    this.set({
      direction,
      lastReport: report,
      pendingEdit: null,
      lastPlan: null,
      selectedPoi: null,
    });
  }
}
