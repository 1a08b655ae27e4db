import { describe, expect, it } from "vitest";

import { centralityColor, hslLightness, partitionColor } from "../src/color.js";

describe("centrality ramp", () => {
  it("renders high scores dark and low scores light", () => {
    const low = hslLightness(centralityColor(0));
    const mid = hslLightness(centralityColor(0.5));
    const high = hslLightness(centralityColor(1));
    expect(high).toBeLessThan(mid);
    expect(mid).toBeLessThan(low);
  });

  it("is monotone in lightness across the whole range", () => {
    let previous = Infinity;
    for (let s = 0; s <= 1.0001; s += 0.05) {
      const light = hslLightness(centralityColor(s));
      expect(light).toBeLessThanOrEqual(previous);
      previous = light;
    }
  });

  it("clamps out-of-range scores", () => {
    expect(centralityColor(-3)).toBe(centralityColor(0));
    expect(centralityColor(7)).toBe(centralityColor(1));
  });

  it("maps equal scores to equal colors", () => {
    expect(centralityColor(0.25)).toBe(centralityColor(0.25));
  });
});

describe("hslLightness", () => {
  it("parses the lightness component", () => {
    expect(hslLightness("hsl(226, 58%, 42%)")).toBe(42);
  });

  it("rejects non-hsl colors", () => {
    expect(() => hslLightness("#ffffff")).toThrow(/not an hsl/);
  });
});

describe("partition palette", () => {
  const labels = ["north", "south", "east", "west"];

  it("is deterministic per label", () => {
    expect(partitionColor("south", labels)).toBe(partitionColor("south", labels));
  });

  it("assigns distinct colors to distinct labels", () => {
    const colors = new Set(labels.map((l) => partitionColor(l, labels)));
    expect(colors.size).toBe(labels.length);
  });

  it("falls back to the first hue for unknown labels", () => {
    expect(partitionColor("elsewhere", labels)).toBe(partitionColor("north", labels));
  });
});
