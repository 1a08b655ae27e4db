"""Great-circle geometry on the Earth's surface.

The sole source of the "inline" (straight-line) metric and of automatic
edge weights.  All distances are meters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Spherical Earth radius, meters.
EARTH_RADIUS_M = 6_378_000.0


@dataclass(frozen=True)
class GeoPoint:
    """A point on the sphere in decimal degrees.

    lat must lie in [-90, +90]; lon is normalized to [-180, +180).
    """

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.lat) or not np.isfinite(self.lon):
            raise ValueError(f"non-finite coordinate ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        lon = normalize_lon(self.lon)
        object.__setattr__(self, "lon", lon)


def normalize_lon(lon: float) -> float:
    """Wrap a longitude into [-180, +180)."""
    lon = float(lon)
    if -180.0 <= lon < 180.0:
        return lon
    return (lon + 180.0) % 360.0 - 180.0


class TrigCache:
    """Precomputed sin/cos of latitudes and longitudes (radians).

    Computing these once per coordinate array keeps every consumer of the
    distance kernel (edge weights, per-node fields, pairwise matrices)
    bitwise-consistent: the combine step below is the only arithmetic that
    differs between call sites.
    """

    __slots__ = ("sin_lat", "cos_lat", "sin_lon", "cos_lon")

    def __init__(self, lat_deg: np.ndarray, lon_deg: np.ndarray) -> None:
        lat = np.radians(np.asarray(lat_deg, dtype=np.float64))
        lon = np.radians(np.asarray(lon_deg, dtype=np.float64))
        self.sin_lat = np.sin(lat)
        self.cos_lat = np.cos(lat)
        self.sin_lon = np.sin(lon)
        self.cos_lon = np.cos(lon)

    def take(self, idx: np.ndarray) -> "TrigCache":
        out = object.__new__(TrigCache)
        out.sin_lat = self.sin_lat[idx]
        out.cos_lat = self.cos_lat[idx]
        out.sin_lon = self.sin_lon[idx]
        out.cos_lon = self.cos_lon[idx]
        return out

    def col(self) -> "TrigCache":
        # column view: broadcasting against a row TrigCache yields a matrix
        out = object.__new__(TrigCache)
        out.sin_lat = self.sin_lat[:, None]
        out.cos_lat = self.cos_lat[:, None]
        out.sin_lon = self.sin_lon[:, None]
        out.cos_lon = self.cos_lon[:, None]
        return out


def gc_combine(a: TrigCache, b: TrigCache) -> np.ndarray:
    """Great-circle distances from precomputed trig, broadcasting a vs b.

    cos(lon_a - lon_b) is expanded as cos*cos + sin*sin so that only the
    per-node trig values (computed once) enter the formula.  Coincident
    coordinates are forced to exactly zero: the arccos argument for a
    point against itself can round to one ulp below 1, which would read
    as ~0.1 m of self-distance.  sin is injective over the latitude range,
    so three equality tests identify coincident pairs.
    """
    arg = a.sin_lat * b.sin_lat + a.cos_lat * b.cos_lat * (
        a.cos_lon * b.cos_lon + a.sin_lon * b.sin_lon
    )
    arg = np.clip(arg, -1.0, 1.0)
    d = EARTH_RADIUS_M * np.arccos(arg)
    same = (
        (a.sin_lat == b.sin_lat)
        & (a.sin_lon == b.sin_lon)
        & (a.cos_lon == b.cos_lon)
    )
    if same.ndim:
        d[same] = 0.0
    else:
        d = np.where(same, 0.0, d)
    return d


def great_circle_arrays(
    lat_a: np.ndarray,
    lon_a: np.ndarray,
    lat_b: np.ndarray,
    lon_b: np.ndarray,
) -> np.ndarray:
    """Element-wise great-circle distance in meters between coordinate arrays.

    d = R * arccos(sin(lat_a)sin(lat_b) + cos(lat_a)cos(lat_b)cos(Δlon)),
    angles in radians, R = 6,378,000 m, the arccos argument clamped to
    [-1, +1] against floating-point overshoot near identical points.
    """
    return gc_combine(TrigCache(lat_a, lon_a), TrigCache(lat_b, lon_b))


def great_circle(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters between two points.

    >>> round(great_circle(GeoPoint(0, 0), GeoPoint(0, 90)))
    10018539
    """
    d = great_circle_arrays(
        np.array([a.lat]), np.array([a.lon]), np.array([b.lat]), np.array([b.lon])
    )
    return float(d[0])
