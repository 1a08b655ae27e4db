/** Panel rendering: current counts, staged edit, suggestion, comparison.
 *
 * Every count, total, and diff shown here is taken verbatim from a service
 * response.  The only arithmetic performed is the displayed difference
 * between two service-reported counts in the comparison table; the UI never
 * recomputes distances or assignments itself. */

import type { CompareData, PendingEdit } from "./state.js";
import type { Diff, Edit, Plan, Report } from "./types.js";

export function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

export function directionWord(direction: string): string {
  switch (direction) {
    case "I":
      return "inward";
    case "O":
      return "outward";
    case "A":
      return "absolute";
    default:
      return direction;
  }
}

export function formatDelta(delta: number): string {
  return delta > 0 ? `+${delta}` : String(delta);
}

/** "21 -> 11 (-10)" — all three numbers straight from the service diff. */
export function formatDiff(diff: Diff): string {
  return `${diff.total_before} -> ${diff.total_after} (${formatDelta(diff.delta)})`;
}

export function describeEdit(edit: Edit): string {
  if (edit.move) return `move POI ${edit.move[0]} to node ${edit.move[1]}`;
  if (edit.add !== undefined) {
    return `add POI at node ${edit.add}` + (edit.label ? ` ("${edit.label}")` : "");
  }
  if (edit.remove !== undefined) return `remove POI ${edit.remove}`;
  return "no edit";
}

function countsTable(report: Report): HTMLTableElement {
  const table = h("table", { class: "counts" });
  const head = h("tr");
  head.append(h("th", {}, "POI"), h("th", {}, "node"), h("th", {}, "count"));
  table.appendChild(head);
  for (const p of report.pois) {
    const row = h("tr", { "data-node": String(p.node) });
    row.append(
      h("td", {}, p.label),
      h("td", {}, String(p.node)),
      h("td", { class: "count" }, String(p.count)),
    );
    table.appendChild(row);
  }
  const totalRow = h("tr", { class: "total" });
  totalRow.append(h("td", {}, "total"), h("td"), h("td", { class: "count" }, String(report.total)));
  table.appendChild(totalRow);
  return table;
}

export function renderCountsPanel(report: Report): HTMLElement {
  const panel = h("section", { id: "counts-panel", class: "panel" });
  panel.appendChild(h("h3", {}, `Inconsistencies (${directionWord(report.direction)})`));
  panel.appendChild(countsTable(report));
  return panel;
}

export function renderPendingPanel(
  pending: PendingEdit,
  onCommit: () => void,
  onDiscard: () => void,
): HTMLElement {
  const panel = h("section", { id: "pending-panel", class: "panel" });
  panel.appendChild(h("h3", {}, "Staged edit"));
  panel.appendChild(h("p", { class: "edit-desc" }, describeEdit(pending.edit)));
  panel.appendChild(h("p", { class: "diff" }, formatDiff(pending.whatif.diff)));
  panel.appendChild(countsTable(pending.whatif.report));
  const commit = h("button", { id: "commit-btn", type: "button" }, "Commit");
  commit.addEventListener("click", onCommit);
  const discard = h("button", { id: "discard-btn", type: "button" }, "Discard");
  discard.addEventListener("click", onDiscard);
  const row = h("div", { class: "button-row" });
  row.append(commit, discard);
  panel.appendChild(row);
  return panel;
}

export function renderPlanPanel(
  plan: Plan,
  onAccept: () => void,
  onDiscard: () => void,
): HTMLElement {
  const panel = h("section", { id: "plan-panel", class: "panel" });
  panel.appendChild(h("h3", {}, "Suggested relocations"));
  panel.appendChild(
    h(
      "p",
      { class: "plan-totals" },
      `total inconsistencies: ${plan.totals_before} -> ${plan.totals_after}`,
    ),
  );
  const list = h("ul", { class: "plan-moves" });
  if (plan.moves.length === 0) {
    list.appendChild(h("li", {}, "no beneficial move found"));
  }
  for (const [from, to] of plan.moves) {
    list.appendChild(
      h("li", { "data-from": String(from), "data-to": String(to) }, `move POI ${from} to node ${to}`),
    );
  }
  panel.appendChild(list);
  const accept = h("button", { id: "accept-plan-btn", type: "button" }, "Accept");
  accept.addEventListener("click", onAccept);
  const discard = h("button", { id: "discard-plan-btn", type: "button" }, "Discard");
  discard.addEventListener("click", onDiscard);
  const row = h("div", { class: "button-row" });
  row.append(accept, discard);
  panel.appendChild(row);
  return panel;
}

export interface CompareRow {
  label: string;
  before: number | null;
  after: number | null;
}

/** Pair the two reports' POI rows.  Relocations preserve POI order, so when
 * the sets have equal size rows pair by position; otherwise they pair by
 * label and one-sided rows (an added or removed POI) stay unmatched. */
export function pairReports(before: Report, after: Report): CompareRow[] {
  if (before.pois.length === after.pois.length) {
    return before.pois.map((b, i) => {
      const a = after.pois[i]!;
      const label = b.label === a.label ? b.label : `${b.label} -> ${a.label}`;
      return { label, before: b.count, after: a.count };
    });
  }
  const rows: CompareRow[] = [];
  const afterByLabel = new Map(after.pois.map((p) => [p.label, p] as const));
  const seen = new Set<string>();
  for (const b of before.pois) {
    const a = afterByLabel.get(b.label);
    seen.add(b.label);
    rows.push({ label: b.label, before: b.count, after: a ? a.count : null });
  }
  for (const a of after.pois) {
    if (!seen.has(a.label)) rows.push({ label: a.label, before: null, after: a.count });
  }
  return rows;
}

export function renderComparePanel(compare: CompareData): HTMLElement {
  const { before, after } = compare;
  const panel = h("section", { id: "compare-panel", class: "panel" });
  panel.appendChild(h("h3", {}, "Original City | Enhanced City"));
  const table = h("table", { class: "compare" });
  const head = h("tr");
  head.append(
    h("th", {}, "POI"),
    h("th", {}, "Original City"),
    h("th", {}, "Enhanced City"),
    h("th", {}, "Change"),
  );
  table.appendChild(head);
  for (const r of pairReports(before, after)) {
    const tr = h("tr", { "data-label": r.label });
    tr.append(
      h("td", {}, r.label),
      h("td", { class: "before" }, r.before === null ? "—" : String(r.before)),
      h("td", { class: "after" }, r.after === null ? "—" : String(r.after)),
      h(
        "td",
        { class: "delta" },
        r.before === null || r.after === null ? "—" : formatDelta(r.after - r.before),
      ),
    );
    table.appendChild(tr);
  }
  const totals = h("tr", { class: "total", "data-role": "totals" });
  totals.append(
    h("td", {}, "total"),
    h("td", { class: "before" }, String(before.total)),
    h("td", { class: "after" }, String(after.total)),
    h("td", { class: "delta" }, formatDelta(after.total - before.total)),
  );
  table.appendChild(totals);
  panel.appendChild(table);
  if (compare.planTotalsAfter !== null) {
    const match = compare.planTotalsAfter === after.total;
    panel.appendChild(
      h(
        "p",
        { class: match ? "plan-check ok" : "plan-check mismatch" },
        match
          ? `matches the suggestion's promised total (${compare.planTotalsAfter})`
          : `does NOT match the suggestion's promised total (${compare.planTotalsAfter})`,
      ),
    );
  }
  return panel;
}
