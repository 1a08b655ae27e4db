/** Fit lon/lat geometry onto a fixed-size drawing surface, and map clicks
 * back.  Drawing-surface math only — every *displayed* distance or count
 * comes from the service, never from these coordinates. */

export interface Bounds {
  minLon: number;
  minLat: number;
  maxLon: number;
  maxLat: number;
}

export function boundsOf(points: Iterable<{ lon: number; lat: number }>): Bounds {
  let minLon = Infinity;
  let minLat = Infinity;
  let maxLon = -Infinity;
  let maxLat = -Infinity;
  for (const p of points) {
    if (p.lon < minLon) minLon = p.lon;
    if (p.lon > maxLon) maxLon = p.lon;
    if (p.lat < minLat) minLat = p.lat;
    if (p.lat > maxLat) maxLat = p.lat;
  }
  if (!Number.isFinite(minLon)) throw new Error("no points to fit");
  return { minLon, minLat, maxLon, maxLat };
}

export class Projector {
  /** Cosine shrink of a degree of longitude at the map's mid latitude,
   * so city-scale shapes keep their aspect ratio. */
  private readonly kx: number;
  /** Pixels per degree of latitude. */
  private readonly scale: number;
  private readonly x0: number;
  private readonly y0: number;

  constructor(
    readonly bounds: Bounds,
    readonly width: number,
    readonly height: number,
    pad = 24,
  ) {
    const midLat = (bounds.minLat + bounds.maxLat) / 2;
    this.kx = Math.max(1e-6, Math.cos((midLat * Math.PI) / 180));
    const lonSpan = Math.max(bounds.maxLon - bounds.minLon, 1e-9);
    const latSpan = Math.max(bounds.maxLat - bounds.minLat, 1e-9);
    const sx = (width - 2 * pad) / (lonSpan * this.kx);
    const sy = (height - 2 * pad) / latSpan;
    this.scale = Math.min(sx, sy);
    // Center the drawing inside the surface.
    this.x0 = (width - lonSpan * this.kx * this.scale) / 2;
    this.y0 = (height - latSpan * this.scale) / 2;
  }

  /** Geographic to surface coordinates; north is up (y grows downward). */
  toXy(lon: number, lat: number): [number, number] {
    const x = this.x0 + (lon - this.bounds.minLon) * this.kx * this.scale;
    const y = this.y0 + (this.bounds.maxLat - lat) * this.scale;
    return [x, y];
  }

  /** Inverse of toXy, for translating clicks into geographic coordinates. */
  toLonLat(x: number, y: number): [number, number] {
    const lon = this.bounds.minLon + (x - this.x0) / (this.kx * this.scale);
    const lat = this.bounds.maxLat - (y - this.y0) / this.scale;
    return [lon, lat];
  }
}
