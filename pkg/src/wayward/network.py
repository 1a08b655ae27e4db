"""The immutable city graph: directed, distance-weighted, geometry-preserving."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from .geo import GeoPoint, TrigCache, gc_combine

NodeId = int


@dataclass(frozen=True)
class Node:
    id: NodeId
    pos: GeoPoint
    external_ref: str | None = None


@dataclass(frozen=True)
class Edge:
    source: NodeId
    target: NodeId
    weight: float


class Network:
    """A directed street graph with per-node coordinates.

    Immutable after construction; every analysis shares one instance.
    Adjacency is stored as CSR matrices in both orientations, plus a trig
    cache of the node coordinates feeding all great-circle computations.
    Duplicate directed edges collapse to their minimum weight.
    """

    def __init__(
        self,
        lat: np.ndarray,
        lon: np.ndarray,
        src: np.ndarray,
        dst: np.ndarray,
        weight: np.ndarray,
        external_refs: tuple[str | None, ...] | None = None,
        trig: TrigCache | None = None,
    ) -> None:
        self.lat = np.ascontiguousarray(lat, dtype=np.float64)
        self.lon = np.ascontiguousarray(lon, dtype=np.float64)
        n = len(self.lat)
        if n == 0:
            raise ValueError("no nodes")
        src = np.ascontiguousarray(src, dtype=np.int64)
        dst = np.ascontiguousarray(dst, dtype=np.int64)
        weight = np.ascontiguousarray(weight, dtype=np.float64)
        if len(src):
            if (src == dst).any():
                bad = int(src[src == dst][0])
                raise ValueError(f"self-loop at node {bad}")
            if src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n:
                raise ValueError("edge references a missing node")
            if not np.isfinite(weight).all():
                raise ValueError("non-finite edge weight")
            if weight.min() < 0:
                raise ValueError("negative edge weight")
            # collapse duplicate directed edges, keeping the minimum weight
            order = np.lexsort((weight, dst, src))
            src, dst, weight = src[order], dst[order], weight[order]
            keep = np.ones(len(src), dtype=bool)
            keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
            src, dst, weight = src[keep], dst[keep], weight[keep]
        self.edge_src = src
        self.edge_dst = dst
        self.edge_weight = weight
        self.external_refs = external_refs
        self.n_nodes = n
        self.trig = trig if trig is not None else TrigCache(self.lat, self.lon)
        self.adjacency = csr_matrix((weight, (src, dst)), shape=(n, n))
        self.adjacency_rev = self.adjacency.T.tocsr()

    @property
    def n_edges(self) -> int:
        return len(self.edge_src)

    def node(self, i: NodeId) -> Node:
        ref = self.external_refs[i] if self.external_refs else None
        return Node(i, GeoPoint(float(self.lat[i]), float(self.lon[i])), ref)

    def nodes(self) -> list[Node]:
        return [self.node(i) for i in range(self.n_nodes)]

    def edges(self) -> list[Edge]:
        return [
            Edge(int(s), int(t), float(w))
            for s, t, w in zip(self.edge_src, self.edge_dst, self.edge_weight)
        ]

    def out_adjacency(self, i: NodeId) -> list[Edge]:
        a = self.adjacency
        lo, hi = a.indptr[i], a.indptr[i + 1]
        return [Edge(i, int(j), float(w)) for j, w in zip(a.indices[lo:hi], a.data[lo:hi])]

    def in_adjacency(self, i: NodeId) -> list[Edge]:
        a = self.adjacency_rev
        lo, hi = a.indptr[i], a.indptr[i + 1]
        return [Edge(int(j), i, float(w)) for j, w in zip(a.indices[lo:hi], a.data[lo:hi])]


def build(
    nodes: list[Node] | list[tuple[float, float]],
    edges: list[tuple],
    external_refs: tuple[str | None, ...] | None = None,
) -> Network:
    """Build a Network from nodes and (source, target[, weight]) edges.

    Edges without an explicit weight (omitted or None) get the great-circle
    distance of their endpoints.
    """
    if nodes and isinstance(nodes[0], Node):
        ids = [nd.id for nd in nodes]
        if ids != list(range(len(nodes))):
            raise ValueError("node ids must be dense 0..n-1 in order")
        lat = np.array([nd.pos.lat for nd in nodes], dtype=np.float64)
        lon = np.array([nd.pos.lon for nd in nodes], dtype=np.float64)
        if external_refs is None:
            refs = tuple(nd.external_ref for nd in nodes)
            external_refs = refs if any(r is not None for r in refs) else None
    else:
        lat = np.array([p[0] for p in nodes], dtype=np.float64)
        lon = np.array([p[1] for p in nodes], dtype=np.float64)
    n = len(lat)
    if n == 0:
        raise ValueError("no nodes")

    srcs = np.empty(len(edges), dtype=np.int64)
    dsts = np.empty(len(edges), dtype=np.int64)
    wts = np.full(len(edges), np.nan, dtype=np.float64)
    for k, e in enumerate(edges):
        s, t = int(e[0]), int(e[1])
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError(f"edge ({s}, {t}) references a missing node")
        srcs[k] = s
        dsts[k] = t
        if len(e) > 2 and e[2] is not None:
            w = float(e[2])
            if not np.isfinite(w):
                raise ValueError(f"non-finite weight on edge ({s}, {t})")
            wts[k] = w

    trig = TrigCache(lat, lon)
    auto = np.isnan(wts)
    if auto.any():
        wts[auto] = gc_combine(trig.take(srcs[auto]), trig.take(dsts[auto]))
    return Network(lat, lon, srcs, dsts, wts, external_refs, trig=trig)


class ReverseView:
    """A logically transposed Network sharing the original's node data."""

    def __init__(self, net: Network) -> None:
        self._base = net
        self.lat = net.lat
        self.lon = net.lon
        self.trig = net.trig
        self.n_nodes = net.n_nodes
        self.external_refs = net.external_refs
        self.adjacency = net.adjacency_rev
        self.adjacency_rev = net.adjacency
        self.edge_src = net.edge_dst
        self.edge_dst = net.edge_src
        self.edge_weight = net.edge_weight

    n_edges = Network.n_edges
    node = Network.node
    nodes = Network.nodes
    edges = Network.edges
    out_adjacency = Network.out_adjacency
    in_adjacency = Network.in_adjacency


def reverse_view(net: Network | ReverseView) -> Network | ReverseView:
    """Swapped-adjacency view of the graph; node data is shared, not copied."""
    if isinstance(net, ReverseView):
        return net._base
    return ReverseView(net)
