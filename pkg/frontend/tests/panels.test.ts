import { describe, expect, it } from "vitest";

import {
  describeEdit,
  directionWord,
  formatDelta,
  formatDiff,
  pairReports,
  renderComparePanel,
  renderCountsPanel,
  renderPendingPanel,
  renderPlanPanel,
} from "../src/panels.js";
import type { Report } from "../src/types.js";
import { AFTER_ACCEPT, BASELINE, PLAN } from "./fakes.js";

describe("formatting", () => {
  it("maps direction letters to words and leaves strangers alone", () => {
    expect(directionWord("I")).toBe("inward");
    expect(directionWord("O")).toBe("outward");
    expect(directionWord("A")).toBe("absolute");
    expect(directionWord("zigzag")).toBe("zigzag");
  });

  it("signs deltas the way the service reports them", () => {
    expect(formatDelta(3)).toBe("+3");
    expect(formatDelta(0)).toBe("0");
    expect(formatDelta(-10)).toBe("-10");
  });

  it("renders a diff line verbatim from the service fields", () => {
    expect(formatDiff({ total_before: 21, total_after: 11, delta: -10 })).toBe("21 -> 11 (-10)");
    expect(formatDiff({ total_before: 5, total_after: 5, delta: 0 })).toBe("5 -> 5 (0)");
  });

  it("describes each edit kind", () => {
    expect(describeEdit({ add: 7, label: "clinic" })).toBe('add POI at node 7 ("clinic")');
    expect(describeEdit({ add: 7 })).toBe("add POI at node 7");
    expect(describeEdit({ move: [3, 9] })).toBe("move POI 3 to node 9");
    expect(describeEdit({ remove: 3 })).toBe("remove POI 3");
  });
});

describe("counts panel", () => {
  it("shows one row per POI and the reported total, verbatim", () => {
    const panel = renderCountsPanel(BASELINE);
    expect(panel.querySelector("h3")!.textContent).toBe("Inconsistencies (inward)");
    const rows = panel.querySelectorAll("tr[data-node]");
    expect(rows).toHaveLength(2);
    expect(rows[0]!.textContent).toContain("alpha");
    expect(rows[0]!.querySelector(".count")!.textContent).toBe("2");
    expect(rows[1]!.querySelector(".count")!.textContent).toBe("0");
    expect(panel.querySelector("tr.total .count")!.textContent).toBe(String(BASELINE.total));
  });
});

describe("pending panel", () => {
  const pending = {
    edit: { add: 4, label: "new site" } as const,
    whatif: {
      report: { ...BASELINE, total: 1 },
      diff: { total_before: 2, total_after: 1, delta: -1 },
    },
  };

  it("shows the edit, the service diff, and the what-if counts", () => {
    const panel = renderPendingPanel(pending, () => {}, () => {});
    expect(panel.querySelector(".edit-desc")!.textContent).toBe('add POI at node 4 ("new site")');
    expect(panel.querySelector(".diff")!.textContent).toBe("2 -> 1 (-1)");
    expect(panel.querySelector("tr.total .count")!.textContent).toBe("1");
  });

  it("wires the commit and discard buttons", () => {
    let committed = 0;
    let discarded = 0;
    const panel = renderPendingPanel(
      pending,
      () => {
        committed += 1;
      },
      () => {
        discarded += 1;
      },
    );
    (panel.querySelector("#commit-btn") as HTMLButtonElement).click();
    (panel.querySelector("#discard-btn") as HTMLButtonElement).click();
    expect(committed).toBe(1);
    expect(discarded).toBe(1);
  });
});

describe("plan panel", () => {
  it("lists the moves and the promised totals", () => {
    const panel = renderPlanPanel(PLAN, () => {}, () => {});
    expect(panel.querySelector(".plan-totals")!.textContent).toBe(
      "total inconsistencies: 2 -> 0",
    );
    const moves = panel.querySelectorAll(".plan-moves li");
    expect(moves).toHaveLength(1);
    expect(moves[0]!.textContent).toBe("move POI 0 to node 5");
    expect(moves[0]!.getAttribute("data-from")).toBe("0");
    expect(moves[0]!.getAttribute("data-to")).toBe("5");
  });

  it("says so when there is no beneficial move", () => {
    const panel = renderPlanPanel({ ...PLAN, moves: [], steps: [] }, () => {}, () => {});
    expect(panel.querySelector(".plan-moves li")!.textContent).toContain("no beneficial move");
  });

  it("wires accept and discard", () => {
    let accepted = 0;
    let discarded = 0;
    const panel = renderPlanPanel(
      PLAN,
      () => {
        accepted += 1;
      },
      () => {
        discarded += 1;
      },
    );
    (panel.querySelector("#accept-plan-btn") as HTMLButtonElement).click();
    (panel.querySelector("#discard-plan-btn") as HTMLButtonElement).click();
    expect(accepted).toBe(1);
    expect(discarded).toBe(1);
  });
});

describe("report pairing", () => {
  it("pairs by position when the POI sets have equal size", () => {
    const rows = pairReports(BASELINE, AFTER_ACCEPT);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({ label: "alpha", before: 2, after: 0 });
    expect(rows[1]).toEqual({ label: "beta", before: 0, after: 0 });
  });

  it("pairs by label and leaves one-sided rows open otherwise", () => {
    const after: Report = {
      ...BASELINE,
      total: 1,
      pois: [...BASELINE.pois, { node: 4, label: "gamma", count: 1 }],
    };
    const rows = pairReports(BASELINE, after);
    expect(rows).toHaveLength(3);
    expect(rows[2]).toEqual({ label: "gamma", before: null, after: 1 });
  });
});

describe("compare panel", () => {
  it("shows the two totals verbatim and their difference", () => {
    const panel = renderComparePanel({
      before: BASELINE,
      after: AFTER_ACCEPT,
      planTotalsAfter: null,
    });
    const totals = panel.querySelector('tr[data-role="totals"]')!;
    expect(totals.querySelector(".before")!.textContent).toBe(String(BASELINE.total));
    expect(totals.querySelector(".after")!.textContent).toBe(String(AFTER_ACCEPT.total));
    expect(totals.querySelector(".delta")!.textContent).toBe("-2");
    expect(panel.querySelector(".plan-check")).toBeNull();
    expect(panel.querySelector("h3")!.textContent).toBe("Original City | Enhanced City");
    const headers = [...panel.querySelectorAll("th")].map((th) => th.textContent);
    expect(headers).toEqual(["POI", "Original City", "Enhanced City", "Change"]);
  });

  it("shows per-POI deltas from the paired counts", () => {
    const panel = renderComparePanel({
      before: BASELINE,
      after: AFTER_ACCEPT,
      planTotalsAfter: null,
    });
    const alpha = panel.querySelector('tr[data-label="alpha"]')!;
    expect(alpha.querySelector(".before")!.textContent).toBe("2");
    expect(alpha.querySelector(".after")!.textContent).toBe("0");
    expect(alpha.querySelector(".delta")!.textContent).toBe("-2");
  });

  it("confirms when the after-total equals the plan's promise", () => {
    const panel = renderComparePanel({
      before: BASELINE,
      after: AFTER_ACCEPT,
      planTotalsAfter: PLAN.totals_after,
    });
    const check = panel.querySelector(".plan-check")!;
    expect(check.classList.contains("ok")).toBe(true);
    expect(check.textContent).toContain(`(${PLAN.totals_after})`);
  });

  it("calls out a mismatch instead of hiding it", () => {
    const panel = renderComparePanel({
      before: BASELINE,
      after: AFTER_ACCEPT,
      planTotalsAfter: 99,
    });
    const check = panel.querySelector(".plan-check")!;
    expect(check.classList.contains("mismatch")).toBe(true);
    expect(check.textContent).toContain("NOT");
  });

  it("marks one-sided rows instead of inventing numbers", () => {
    const after: Report = {
      ...BASELINE,
      pois: [...BASELINE.pois, { node: 4, label: "gamma", count: 1 }],
    };
    const panel = renderComparePanel({ before: BASELINE, after, planTotalsAfter: null });
    const gamma = panel.querySelector('tr[data-label="gamma"]')!;
    expect(gamma.querySelector(".before")!.textContent).toBe("—");
    expect(gamma.querySelector(".delta")!.textContent).toBe("—");
  });
});
