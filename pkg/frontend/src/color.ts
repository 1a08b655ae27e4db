/** Node colors: a sequential ramp for straightness centrality and a
 * categorical palette for POI partitions. */

export const NEUTRAL_NODE = "#cccccc";
export const FLAG_STROKE = "#d62728";
export const POI_FILL = "#f2b824";
export const ARROW_STROKE = "#8338c9";
export const PENDING_STROKE = "#1f77b4";

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}

/** Map min-max-scaled straightness to a blue ramp: high scores render dark,
 * low scores render light. */
export function centralityColor(scaled: number): string {
  const s = clamp01(scaled);
  const lightness = Math.round(90 - 64 * s); // 90% (light) at 0 → 26% (dark) at 1
  return `hsl(226, 58%, ${lightness}%)`;
}

/** Extract the lightness percentage from an hsl() string. */
export function hslLightness(color: string): number {
  const m = /hsl\(\s*\d+(?:\.\d+)?\s*,\s*\d+(?:\.\d+)?%\s*,\s*(\d+(?:\.\d+)?)%\s*\)/.exec(color);
  if (!m || m[1] === undefined) throw new Error(`not an hsl() color: ${color}`);
  return Number(m[1]);
}

/** Deterministic categorical color for a POI label: hues evenly spaced over
 * the ordered label list, so the same session always colors a partition the
 * same way. */
export function partitionColor(label: string, orderedLabels: readonly string[]): string {
  const i = Math.max(0, orderedLabels.indexOf(label));
  const hue = Math.round((360 * i) / Math.max(1, orderedLabels.length));
  return `hsl(${hue}, 55%, 62%)`;
}
