/** JSON shapes exchanged with the street-network service, plus the typed
 * view of its GeoJSON layers.  The UI renders these values verbatim: every
 * displayed count, total, and delta originates in a service response. */

export type LayerName = "centrality" | "inconsistency" | "partitions";

export interface PoiCount {
  node: number;
  label: string;
  count: number;
}

export interface Report {
  direction: string;
  strict_unreachable: boolean;
  total: number;
  pois: PoiCount[];
}

export interface Diff {
  total_before: number;
  total_after: number;
  delta: number;
}

export interface WhatifResponse {
  report: Report;
  diff: Diff;
}

export interface Edit {
  add?: number;
  remove?: number;
  move?: [number, number];
  label?: string;
}

export interface CommitRequest extends Edit {
  moves?: [number, number][];
}

export interface PlanStep {
  old_poi: number;
  new_poi: number;
  total_before: number;
  total_after: number;
}

export interface Plan {
  direction: string;
  moves: [number, number][];
  steps: PlanStep[];
  totals_before: number;
  totals_after: number;
  improved: boolean;
  per_poi_after: PoiCount[];
  final_pois: { node: number; label: string }[];
}

export interface SessionInfo {
  session_id: string;
  n_nodes: number;
  n_edges: number;
  direction: string;
  pois: { node: number; label: string }[];
  baseline: Report;
}

export interface SnapResult {
  node: number;
  lat: number;
  lon: number;
  distance_m: number;
  label?: string;
}

export interface CreateSessionRequest {
  netgeo?: string;
  osm_xml?: string;
  fixture?: string;
  seed?: number;
  profile?: string;
  direction?: string;
  strict_unreachable?: boolean;
  pois?: { lat: number; lon: number; label: string }[];
}

export interface ReduceRequest {
  direction?: string;
  movable?: number[];
  timeout_s?: number;
}

/* GeoJSON as emitted by the service's layers endpoint. */

export interface PointGeometry {
  type: "Point";
  coordinates: [number, number]; // [lon, lat]
}

export interface LineGeometry {
  type: "LineString";
  coordinates: [number, number][];
}

export interface Feature {
  type: "Feature";
  geometry: PointGeometry | LineGeometry;
  properties: Record<string, unknown>;
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: Feature[];
}

/** A network node Point feature with its optional layer properties. */
export interface NodeFeature {
  id: number;
  lon: number;
  lat: number;
  /** Label of the POI this node is assigned to, when assignment is present. */
  poi: string | null;
  inconsistent: boolean;
  straightness: number | null;
  /** Min-max scaled straightness in [0, 1], when the node was scored. */
  straightnessScaled: number | null;
  role: string | null;
  label: string | null;
}

export interface PoiMarker {
  node: number;
  label: string;
  lon: number;
  lat: number;
}

export interface EdgeLine {
  source: number;
  target: number;
  weight: number;
  from: [number, number];
  to: [number, number];
}

export interface Layers {
  nodes: NodeFeature[];
  markers: PoiMarker[];
  edges: EdgeLine[];
  byId: Map<number, NodeFeature>;
}

/** Split a service FeatureCollection into typed node/marker/edge layers.
 *
 * Node features carry an `id`; standalone POI markers carry `role: "poi"`
 * plus the `node` they sit on; edges are LineStrings with source/target. */
export function splitLayers(fc: FeatureCollection): Layers {
  const nodes: NodeFeature[] = [];
  const markers: PoiMarker[] = [];
  const edges: EdgeLine[] = [];
  for (const f of fc.features) {
    const p = f.properties ?? {};
    if (f.geometry.type === "Point") {
      const [lon, lat] = f.geometry.coordinates;
      if (typeof p.id === "number") {
        nodes.push({
          id: p.id,
          lon,
          lat,
          poi: typeof p.poi === "string" ? p.poi : null,
          inconsistent: p.inconsistent === true,
          straightness: typeof p.straightness === "number" ? p.straightness : null,
          straightnessScaled:
            typeof p.straightness_scaled === "number" ? p.straightness_scaled : null,
          role: typeof p.role === "string" ? p.role : null,
          label: typeof p.label === "string" ? p.label : null,
        });
      } else if (p.role === "poi" && typeof p.node === "number") {
        markers.push({ node: p.node, label: String(p.label ?? p.node), lon, lat });
      }
    } else if (
      f.geometry.type === "LineString" &&
      typeof p.source === "number" &&
      typeof p.target === "number"
    ) {
      const from = f.geometry.coordinates[0];
      const to = f.geometry.coordinates[f.geometry.coordinates.length - 1];
      if (!from || !to) continue;
      edges.push({
        source: p.source,
        target: p.target,
        weight: typeof p.weight === "number" ? p.weight : 0,
        from,
        to,
      });
    }
  }
  return { nodes, markers, edges, byId: new Map(nodes.map((n) => [n.id, n])) };
}
