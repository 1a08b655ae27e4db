"""Shortest-path length engine.

Per-POI distance fields over the full graph (scipy's label-setting solver;
correct because weights are non-negative by construction) and all-pairs
tables restricted to induced subgraphs (a compiled per-source solver, since
candidate scoring runs it on thousands of sources per call).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .network import Network, NodeId

UNREACHABLE = np.inf

TO_POI = "to_poi"
FROM_POI = "from_poi"

try:
    import numba
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


@dataclass(frozen=True)
class DistanceField:
    """Distances between one origin node and every node, one direction.

    direction "to_poi": dist[v] = length of the shortest path v -> origin.
    direction "from_poi": dist[v] = length of the shortest path origin -> v.
    Unreachable nodes hold UNREACHABLE (+inf).
    """

    origin: NodeId
    direction: str
    dist: np.ndarray


def field_matrix(net: Network, sources: np.ndarray, direction: str) -> np.ndarray:
    """Stacked distance fields, one row per source, in the given direction."""
    if direction == TO_POI:
        graph = net.adjacency_rev
    elif direction == FROM_POI:
        graph = net.adjacency
    else:
        raise ValueError(f"unknown direction {direction!r}")
    sources = np.atleast_1d(np.asarray(sources, dtype=np.int64))
    return dijkstra(graph, directed=True, indices=sources)


def distances_to(net: Network, p: NodeId) -> DistanceField:
    """Shortest-path length from every node TO p (v -> p in the original graph)."""
    if not 0 <= p < net.n_nodes:
        raise ValueError(f"node {p} not in network")
    return DistanceField(p, TO_POI, field_matrix(net, np.array([p]), TO_POI)[0])


def distances_from(net: Network, p: NodeId) -> DistanceField:
    """Shortest-path length FROM p to every node (p -> v)."""
    if not 0 <= p < net.n_nodes:
        raise ValueError(f"node {p} not in network")
    return DistanceField(p, FROM_POI, field_matrix(net, np.array([p]), FROM_POI)[0])


if _HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _sssp_rows_kernel(indptr, indices, data, k, srcs):  # pragma: no cover - compiled
        nb = srcs.shape[0]
        out = np.empty((nb, k))
        cap = data.shape[0] + 1
        for b in prange(nb):
            s = srcs[b]
            dist = np.full(k, np.inf)
            done = np.zeros(k, numba.boolean)
            dist[s] = 0.0
            # binary heap with lazy deletion; capacity = one push per edge
            heap_d = np.empty(cap, np.float64)
            heap_v = np.empty(cap, np.int64)
            heap_d[0] = 0.0
            heap_v[0] = s
            heap_n = 1
            while heap_n > 0:
                d0 = heap_d[0]
                v0 = heap_v[0]
                heap_n -= 1
                heap_d[0] = heap_d[heap_n]
                heap_v[0] = heap_v[heap_n]
                i = 0
                while True:
                    left = 2 * i + 1
                    right = left + 1
                    small = i
                    if left < heap_n and heap_d[left] < heap_d[small]:
                        small = left
                    if right < heap_n and heap_d[right] < heap_d[small]:
                        small = right
                    if small == i:
                        break
                    heap_d[i], heap_d[small] = heap_d[small], heap_d[i]
                    heap_v[i], heap_v[small] = heap_v[small], heap_v[i]
                    i = small
                if done[v0]:
                    continue
                done[v0] = True
                for e in range(indptr[v0], indptr[v0 + 1]):
                    u = indices[e]
                    nd = d0 + data[e]
                    if nd < dist[u]:
                        dist[u] = nd
                        j = heap_n
                        heap_d[j] = nd
                        heap_v[j] = u
                        heap_n += 1
                        while j > 0:
                            parent = (j - 1) // 2
                            if heap_d[parent] <= heap_d[j]:
                                break
                            heap_d[parent], heap_d[j] = heap_d[j], heap_d[parent]
                            heap_v[parent], heap_v[j] = heap_v[j], heap_v[parent]
                            j = parent
            out[b] = dist
        return out


def sssp_rows(graph: csr_matrix, sources: np.ndarray) -> np.ndarray:
    """Single-source rows of the distance matrix of a (small) CSR graph."""
    sources = np.asarray(sources, dtype=np.int64)
    if len(sources) == 0:
        return np.empty((0, graph.shape[0]))
    if _HAVE_NUMBA:
        return _sssp_rows_kernel(
            graph.indptr, graph.indices, graph.data, graph.shape[0], sources
        )
    return dijkstra(graph, directed=True, indices=sources)


@dataclass(frozen=True)
class SubgraphDistances:
    """All-pairs distances within an induced subgraph.

    members is sorted ascending; dist[i, j] = shortest i -> j path length
    using only edges with both endpoints in members (UNREACHABLE otherwise).
    """

    members: np.ndarray
    dist: np.ndarray

    def index_of(self, node: NodeId) -> int:
        i = int(np.searchsorted(self.members, node))
        if i >= len(self.members) or self.members[i] != node:
            raise KeyError(f"node {node} not a member")
        return i

    def between(self, a: NodeId, b: NodeId) -> float:
        return float(self.dist[self.index_of(a), self.index_of(b)])


def induced_csr(net: Network, members: np.ndarray) -> csr_matrix:
    """CSR adjacency of the subgraph induced by members (sorted ascending)."""
    return net.adjacency[members][:, members].tocsr()


def member_array(members) -> np.ndarray:
    """Sorted unique int64 array from any iterable of node ids."""
    if isinstance(members, np.ndarray):
        arr = members.astype(np.int64, copy=False)
    else:
        arr = np.fromiter((int(m) for m in members), dtype=np.int64)
    return np.unique(arr)


def pairwise_in_subgraph(net: Network, members) -> SubgraphDistances:
    """All-pairs shortest-path table restricted to the induced subgraph."""
    members = member_array(members)
    if len(members) == 0:
        return SubgraphDistances(members, np.empty((0, 0)))
    if members[0] < 0 or members[-1] >= net.n_nodes:
        raise ValueError("members outside the network")
    sub = induced_csr(net, members)
    k = len(members)
    dist = sssp_rows(sub, np.arange(k, dtype=np.int64))
    return SubgraphDistances(members, dist)


def iter_subgraph_rows(
    net: Network, members: np.ndarray, block: int = 1024
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (source index block, distance rows) over an induced subgraph.

    Lets callers reduce over the k x k table without materializing it.
    """
    sub = induced_csr(net, members)
    k = len(members)
    for lo in range(0, k, block):
        idx = np.arange(lo, min(lo + block, k), dtype=np.int64)
        yield idx, sssp_rows(sub, idx)


def warm_up() -> None:
    """Trigger JIT compilation of the subgraph solver on a toy instance."""
    g = csr_matrix((np.array([1.0]), (np.array([0]), np.array([1]))), shape=(2, 2))
    sssp_rows(g, np.array([0], dtype=np.int64))
