"""Parsers that turn external data into a Network plus a PoiSet.

Two sources: a plain-text edge-list format (NETGEO) and OpenStreetMap XML
extracts.  Also: coordinate snapping and strongly-connected-component
filtering, both plumbing around the same Network type.

NETGEO is line-oriented, whitespace-separated, '#' starts a comment:
    N <id:int> <lat:decimal-degrees> <lon:decimal-degrees>
    E <source:int> <target:int> [weight_meters:decimal]
    P <node:int> <label:string-no-spaces>
"""
from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np
from scipy.sparse.csgraph import connected_components

from . import network
from .geo import GeoPoint, TrigCache, gc_combine
from .network import Network, NodeId

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Malformed input, with the offending line number when applicable."""

    def __init__(self, message: str, line_no: int | None = None) -> None:
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class PoiSet:
    """An ordered collection of point-of-interest nodes with unique labels."""

    nodes: tuple[NodeId, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) == 0:
            raise ValueError("PoiSet must be non-empty")
        if len(self.nodes) != len(self.labels):
            raise ValueError("nodes and labels differ in length")
        if len(set(self.nodes)) != len(self.nodes):
            dup = [n for n in self.nodes if self.nodes.count(n) > 1][0]
            raise ValueError(f"duplicate POI node {dup}")
        if len(set(self.labels)) != len(self.labels):
            dup = [l for l in self.labels if self.labels.count(l) > 1][0]
            raise ValueError(f"duplicate POI label {dup!r}")

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(zip(self.nodes, self.labels))

    def node_array(self) -> np.ndarray:
        return np.array(self.nodes, dtype=np.int64)

    def index_of(self, node: NodeId) -> int:
        try:
            return self.nodes.index(node)
        except ValueError:
            raise KeyError(f"node {node} is not a POI") from None

    def label_of(self, node: NodeId) -> str:
        return self.labels[self.index_of(node)]

    def _fresh_label(self, node: NodeId) -> str:
        base = f"poi_{node}"
        label = base
        k = 2
        while label in self.labels:
            label = f"{base}_{k}"
            k += 1
        return label

    def with_added(self, node: NodeId, label: str | None = None) -> "PoiSet":
        if node in self.nodes:
            raise ValueError(f"duplicate POI: node {node} is already a POI")
        return PoiSet(
            self.nodes + (node,), self.labels + (label or self._fresh_label(node),)
        )

    def _edit_index(self, node: NodeId) -> int:
        # Edits report bad arguments as ValueError so callers can treat them
        # uniformly with the other edit rejections (duplicates, empty set).
        try:
            return self.index_of(node)
        except KeyError as exc:
            raise ValueError(exc.args[0]) from None

    def with_removed(self, node: NodeId) -> "PoiSet":
        i = self._edit_index(node)
        if len(self.nodes) == 1:
            raise ValueError("removing the last POI would empty the set")
        return PoiSet(
            self.nodes[:i] + self.nodes[i + 1 :], self.labels[:i] + self.labels[i + 1 :]
        )

    def with_moved(self, old: NodeId, new: NodeId) -> "PoiSet":
        """Replace old with new in place (order and label preserved)."""
        i = self._edit_index(old)
        if new != old and new in self.nodes:
            raise ValueError(f"duplicate POI: node {new} is already a POI")
        nodes = list(self.nodes)
        nodes[i] = new
        return PoiSet(tuple(nodes), self.labels)


def _lines(stream: IO[str] | Iterable[str] | str) -> Iterable[str]:
    if isinstance(stream, str):
        return stream.splitlines()
    return stream


def parse_edge_list(stream: IO[str] | Iterable[str] | str) -> tuple[Network, PoiSet | None]:
    """Parse the NETGEO text format into a Network and optional PoiSet.

    Node ids may be sparse in the file; they are re-indexed densely in
    ascending order, with the original id kept as external_ref.
    """
    raw_nodes: dict[int, tuple[float, float]] = {}
    raw_edges: list[tuple[int, int, float | None, int]] = []
    raw_pois: list[tuple[int, str, int]] = []
    for line_no, line in enumerate(_lines(stream), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        kind = parts[0].upper()
        try:
            if kind == "N":
                if len(parts) != 4:
                    raise ValueError("expected: N <id> <lat> <lon>")
                nid, lat, lon = int(parts[1]), float(parts[2]), float(parts[3])
                if nid in raw_nodes:
                    raise ValueError(f"duplicate node id {nid}")
                if not -90.0 <= lat <= 90.0:
                    raise ValueError(f"latitude {lat} outside [-90, 90]")
                raw_nodes[nid] = (lat, lon)
            elif kind == "E":
                if len(parts) not in (3, 4):
                    raise ValueError("expected: E <source> <target> [weight]")
                w = float(parts[3]) if len(parts) == 4 else None
                raw_edges.append((int(parts[1]), int(parts[2]), w, line_no))
            elif kind == "P":
                if len(parts) != 3:
                    raise ValueError("expected: P <node> <label>")
                raw_pois.append((int(parts[1]), parts[2], line_no))
            else:
                raise ValueError(f"unknown record type {parts[0]!r}")
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from None

    if not raw_nodes:
        raise ParseError("no nodes")

    order = sorted(raw_nodes)
    index = {orig: i for i, orig in enumerate(order)}
    lat = np.array([raw_nodes[o][0] for o in order])
    lon = np.array([raw_nodes[o][1] for o in order])
    refs = tuple(str(o) for o in order) if order != list(range(len(order))) else None

    src = np.empty(len(raw_edges), dtype=np.int64)
    dst = np.empty(len(raw_edges), dtype=np.int64)
    wts = np.full(len(raw_edges), np.nan)
    for k, (s, t, w, line_no) in enumerate(raw_edges):
        if s not in index or t not in index:
            missing = s if s not in index else t
            raise ParseError(f"edge references unknown node {missing}", line_no)
        if s == t:
            raise ParseError(f"self-loop at node {s}", line_no)
        if w is not None and not np.isfinite(w):
            raise ParseError(f"non-finite weight {w}", line_no)
        src[k], dst[k] = index[s], index[t]
        if w is not None:
            wts[k] = w

    trig = TrigCache(lat, lon)
    auto = np.isnan(wts)
    if auto.any():
        wts[auto] = gc_combine(trig.take(src[auto]), trig.take(dst[auto]))
    try:
        net = Network(lat, lon, src, dst, wts, refs, trig=trig)
    except ValueError as exc:
        raise ParseError(str(exc)) from None

    pois = None
    if raw_pois:
        nodes = []
        labels = []
        for node, label, line_no in raw_pois:
            if node not in index:
                raise ParseError(f"POI references unknown node {node}", line_no)
            nodes.append(index[node])
            labels.append(label)
        try:
            pois = PoiSet(tuple(nodes), tuple(labels))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return net, pois


def write_edge_list(net: Network, pois: PoiSet | None = None) -> str:
    """Serialize a Network (and optional PoiSet) to NETGEO text.

    Weights are always written explicitly, so a re-parse reproduces the
    graph exactly rather than re-deriving weights from coordinates.
    """
    out = []
    for i in range(net.n_nodes):
        # float() strips the numpy scalar wrapper; repr keeps full precision.
        out.append(f"N {i} {float(net.lat[i])!r} {float(net.lon[i])!r}")
    for s, t, w in zip(net.edge_src, net.edge_dst, net.edge_weight):
        out.append(f"E {int(s)} {int(t)} {float(w)!r}")
    if pois is not None:
        for node, label in pois:
            out.append(f"P {int(node)} {label}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class HighwayProfile:
    """Which OSM highway classes become street edges."""

    name: str
    allowed: frozenset[str]

    def keeps(self, highway_value: str) -> bool:
        return highway_value in self.allowed


_DRIVE_CLASSES = (
    "motorway",
    "trunk",
    "primary",
    "secondary",
    "tertiary",
    "residential",
    "unclassified",
    "living_street",
)

DEFAULT_PROFILE = HighwayProfile(
    "default",
    frozenset(_DRIVE_CLASSES) | frozenset(f"{c}_link" for c in _DRIVE_CLASSES),
)

PROFILES: dict[str, HighwayProfile] = {
    "default": DEFAULT_PROFILE,
    "walk": HighwayProfile(
        "walk",
        DEFAULT_PROFILE.allowed
        | frozenset({"pedestrian", "footway", "path", "steps", "service", "track"}),
    ),
}


def parse_osm_xml(
    stream: IO[str] | IO[bytes] | str, profile: HighwayProfile = DEFAULT_PROFILE
) -> Network:
    """Parse an OpenStreetMap XML extract into a street Network.

    Keeps ways whose highway tag is in the profile's allow-list; each
    consecutive node pair of a kept way becomes an edge (both directions
    unless oneway=yes, reversed for oneway=-1).  Nodes unused by any kept
    way are dropped; remaining nodes are re-indexed densely in ascending
    OSM-id order with the original id in external_ref.  Ways referencing
    missing nodes are skipped with a warning.
    """
    if isinstance(stream, str):
        import io

        stream = io.StringIO(stream)
    try:
        tree = ET.parse(stream)
    except ET.ParseError as exc:
        raise ParseError(f"malformed OSM XML: {exc}") from None
    root = tree.getroot()

    coords: dict[int, tuple[float, float]] = {}
    for el in root.iter("node"):
        coords[int(el.get("id"))] = (float(el.get("lat")), float(el.get("lon")))

    segments: list[tuple[int, int]] = []
    used: set[int] = set()
    for way in root.iter("way"):
        tags = {t.get("k"): t.get("v") for t in way.findall("tag")}
        highway = tags.get("highway")
        if highway is None or not profile.keeps(highway):
            continue
        refs = [int(nd.get("ref")) for nd in way.findall("nd")]
        missing = [r for r in refs if r not in coords]
        if missing:
            log.warning(
                "skipping way %s: references missing node(s) %s",
                way.get("id"),
                missing[:3],
            )
            continue
        if len(refs) < 2:
            continue
        oneway = tags.get("oneway", "no")
        for u, v in zip(refs, refs[1:]):
            if u == v:
                continue
            if oneway in ("yes", "true", "1"):
                segments.append((u, v))
            elif oneway == "-1":
                segments.append((v, u))
            else:
                segments.append((u, v))
                segments.append((v, u))
        used.update(refs)

    if not used:
        raise ParseError("no usable ways in OSM input")

    order = sorted(used)
    index = {osm: i for i, osm in enumerate(order)}
    lat = np.array([coords[o][0] for o in order])
    lon = np.array([coords[o][1] for o in order])
    src = np.array([index[u] for u, _ in segments], dtype=np.int64)
    dst = np.array([index[v] for _, v in segments], dtype=np.int64)
    trig = TrigCache(lat, lon)
    wts = gc_combine(trig.take(src), trig.take(dst))
    refs = tuple(str(o) for o in order)
    return Network(lat, lon, src, dst, wts, refs, trig=trig)


def snap_pois(net: Network, coords: list[tuple[GeoPoint, str]]) -> PoiSet:
    """Map coordinates to their great-circle-nearest nodes.

    Ties break toward the smallest NodeId.  Two labels snapping to the same
    node is an error naming both labels.
    """
    if net.n_nodes == 0:
        raise ValueError("empty network")
    nodes: list[int] = []
    labels: list[str] = []
    taken: dict[int, str] = {}
    for point, label in coords:
        d = gc_combine(
            TrigCache(np.array([point.lat]), np.array([point.lon])), net.trig
        )
        node = int(np.argmin(d))
        if node in taken:
            raise ValueError(
                f"POIs {taken[node]!r} and {label!r} both snap to node {node}"
            )
        taken[node] = label
        nodes.append(node)
        labels.append(label)
    return PoiSet(tuple(nodes), tuple(labels))


def largest_scc(net: Network) -> tuple[Network, np.ndarray]:
    """Restrict to the largest strongly connected component.

    Returns the sub-network and the ascending array of kept original node
    ids (new id i corresponds to old id kept[i]).
    """
    n_comp, comp = connected_components(net.adjacency, directed=True, connection="strong")
    if n_comp <= 1:
        return net, np.arange(net.n_nodes, dtype=np.int64)
    sizes = np.bincount(comp, minlength=n_comp)
    keep = np.flatnonzero(comp == int(np.argmax(sizes))).astype(np.int64)
    remap = np.full(net.n_nodes, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep), dtype=np.int64)
    mask = (remap[net.edge_src] >= 0) & (remap[net.edge_dst] >= 0)
    refs = (
        tuple(net.external_refs[i] for i in keep) if net.external_refs else None
    )
    sub = Network(
        net.lat[keep],
        net.lon[keep],
        remap[net.edge_src[mask]],
        remap[net.edge_dst[mask]],
        net.edge_weight[mask],
        refs,
    )
    return sub, keep


def remap_pois(pois: PoiSet, kept: np.ndarray) -> PoiSet:
    """Re-index a PoiSet after largest_scc; errors if a POI was dropped."""
    nodes = []
    for node, label in pois:
        i = int(np.searchsorted(kept, node))
        if i >= len(kept) or kept[i] != node:
            raise ValueError(
                f"POI {label!r} (node {node}) is outside the largest strongly "
                "connected component"
            )
        nodes.append(i)
    return PoiSet(tuple(nodes), pois.labels)
