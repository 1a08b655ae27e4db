/** SVG rendering of the network map.
 *
 * Layer semantics:
 *  - node fill: centrality ramp (dark = high straightness) when that layer
 *    is visible and the node was scored; otherwise the partition color when
 *    that layer is visible and the node is assigned; otherwise neutral.
 *    Inconsistent nodes are never centrality-scored by the service, so with
 *    both layers on they show their partition color plus the flag ring.
 *  - inconsistency: flagged nodes get a red ring (one per `inconsistent`
 *    node feature, so the visible count equals the report total).
 *  - POIs: diamond markers over their nodes.
 *  - relocations: arrows from a suggestion's old site to the new one;
 *    a staged move shows as a dashed arrow before it is committed.
 */

import {
  ARROW_STROKE,
  FLAG_STROKE,
  NEUTRAL_NODE,
  PENDING_STROKE,
  POI_FILL,
  centralityColor,
  partitionColor,
} from "./color.js";
import { Projector, boundsOf } from "./project.js";
import type { Edit, LayerName, Layers, NodeFeature } from "./types.js";

export interface MapOptions {
  width?: number;
  height?: number;
  visibleLayers: Set<LayerName>;
  /** Ordered POI labels, fixing the partition palette. */
  poiLabels: readonly string[];
  planMoves?: readonly [number, number][];
  pendingEdit?: Edit | null;
  selectedPoi?: number | null;
  onClick?: (lat: number, lon: number) => void;
}

export interface RenderedMap {
  svg: SVGSVGElement;
  projector: Projector;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el(name: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

function withTitle(node: SVGElement, text: string): SVGElement {
  const title = document.createElementNS(SVG_NS, "title");
  title.textContent = text;
  node.appendChild(title);
  return node;
}

function nodeTooltip(n: NodeFeature): string {
  const parts = [`node ${n.id}`];
  if (n.poi) parts.push(`assigned to ${n.poi}`);
  if (n.inconsistent) parts.push("inconsistent");
  if (n.straightness !== null) parts.push(`straightness ${n.straightness.toFixed(3)}`);
  return parts.join(" · ");
}

export function renderMap(layers: Layers, opts: MapOptions): RenderedMap {
  const width = opts.width ?? 900;
  const height = opts.height ?? 620;
  const svg = el("svg", {
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    class: "network-map",
  }) as SVGSVGElement;
  const projector = new Projector(boundsOf(layers.nodes), width, height);

  const defs = document.createElementNS(SVG_NS, "defs");
  const marker = el("marker", {
    id: "arrowhead",
    viewBox: "0 0 10 10",
    refX: 9,
    refY: 5,
    markerWidth: 7,
    markerHeight: 7,
    orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: ARROW_STROKE }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const e of layers.edges) {
    const [x1, y1] = projector.toXy(e.from[0], e.from[1]);
    const [x2, y2] = projector.toXy(e.to[0], e.to[1]);
    svg.appendChild(
      withTitle(
        el("line", {
          class: "edge",
          x1,
          y1,
          x2,
          y2,
          stroke: "#d4d4d4",
          "stroke-width": 1,
        }),
        `${e.source} → ${e.target} (${e.weight.toFixed(0)} m)`,
      ),
    );
  }

  const flagOn = opts.visibleLayers.has("inconsistency");
  const centOn = opts.visibleLayers.has("centrality");
  const partOn = opts.visibleLayers.has("partitions");
  for (const n of layers.nodes) {
    const [cx, cy] = projector.toXy(n.lon, n.lat);
    let fill = NEUTRAL_NODE;
    if (centOn && n.straightnessScaled !== null) fill = centralityColor(n.straightnessScaled);
    else if (partOn && n.poi !== null) fill = partitionColor(n.poi, opts.poiLabels);
    const flagged = flagOn && n.inconsistent;
    const c = el("circle", {
      class: flagged ? "node flagged" : "node",
      cx,
      cy,
      r: flagged ? 4 : 3,
      fill,
      "data-id": n.id,
    });
    if (flagged) {
      c.setAttribute("stroke", FLAG_STROKE);
      c.setAttribute("stroke-width", "1.6");
    }
    svg.appendChild(withTitle(c, nodeTooltip(n)));
  }

  for (const m of layers.markers) {
    const [x, y] = projector.toXy(m.lon, m.lat);
    const d = `M ${x} ${y - 7} L ${x + 6} ${y} L ${x} ${y + 7} L ${x - 6} ${y} Z`;
    const selected = opts.selectedPoi === m.node;
    const p = el("path", {
      class: selected ? "poi-marker selected" : "poi-marker",
      d,
      fill: POI_FILL,
      stroke: "#4a3300",
      "stroke-width": selected ? 3 : 1.2,
      "data-node": m.node,
    });
    svg.appendChild(withTitle(p, `${m.label} (node ${m.node})`));
  }

  const arrows: Array<{ from: number; to: number; cls: string }> = [];
  for (const [from, to] of opts.planMoves ?? []) arrows.push({ from, to, cls: "relocation" });
  const pending = opts.pendingEdit ?? null;
  if (pending?.move) {
    arrows.push({ from: pending.move[0], to: pending.move[1], cls: "relocation pending" });
  }
  for (const a of arrows) {
    const f = layers.byId.get(a.from);
    const t = layers.byId.get(a.to);
    if (!f || !t) continue;
    const [x1, y1] = projector.toXy(f.lon, f.lat);
    const [x2, y2] = projector.toXy(t.lon, t.lat);
    const line = el("line", {
      class: a.cls,
      x1,
      y1,
      x2,
      y2,
      stroke: ARROW_STROKE,
      "stroke-width": 2.4,
      "marker-end": "url(#arrowhead)",
      "data-from": a.from,
      "data-to": a.to,
    });
    if (a.cls.includes("pending")) line.setAttribute("stroke-dasharray", "6 4");
    svg.appendChild(line);
  }

  if (pending) {
    const site = pending.add ?? pending.remove ?? pending.move?.[1];
    const ref = site !== undefined ? layers.byId.get(site) : undefined;
    if (ref) {
      const [cx, cy] = projector.toXy(ref.lon, ref.lat);
      svg.appendChild(
        el("circle", {
          class: "pending-site",
          cx,
          cy,
          r: 9,
          fill: "none",
          stroke: PENDING_STROKE,
          "stroke-width": 2,
          "stroke-dasharray": "4 3",
        }),
      );
    }
  }

  const onClick = opts.onClick;
  if (onClick) {
    svg.addEventListener("click", (ev: MouseEvent) => {
      const rect = svg.getBoundingClientRect();
      const [lon, lat] = projector.toLonLat(ev.clientX - rect.left, ev.clientY - rect.top);
      onClick(lat, lon);
    });
  }
  return { svg, projector };
}
