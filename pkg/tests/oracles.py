"""Independent reference implementations that pin expected values.

Each oracle reimplements its target with a different algorithm or
formulation (haversine vs arccos, Floyd-Warshall vs label-setting,
per-node loops vs set algebra), so agreement between engine and oracle is
evidence rather than tautology.  Scalar geometry is shared deliberately:
it is validated on its own against the haversine oracle.
"""
from __future__ import annotations

import math

import numpy as np

from wayward.geo import GeoPoint, great_circle
from wayward.ingest import PoiSet
from wayward.network import Network

R_M = 6_378_000.0


def haversine_m(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Haversine great-circle distance, meters, sphere radius 6,378 km."""
    p1 = math.radians(lat1)
    p2 = math.radians(lat2)
    dphi = p2 - p1
    dlon = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * R_M * math.asin(min(1.0, math.sqrt(a)))


def arccos_gc_m(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Spherical-law-of-cosines distance via the math module (no numpy)."""
    p1 = math.radians(lat1)
    p2 = math.radians(lat2)
    arg = math.sin(p1) * math.sin(p2) + math.cos(p1) * math.cos(p2) * math.cos(
        math.radians(lon1 - lon2)
    )
    return R_M * math.acos(max(-1.0, min(1.0, arg)))


def floyd_warshall(n: int, edges: list[tuple[int, int, float]]) -> np.ndarray:
    """All-pairs shortest paths by relaxation over intermediate nodes."""
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for s, t, w in edges:
        if w < d[s, t]:
            d[s, t] = w
    for k in range(n):
        via = d[:, k, None] + d[None, k, :]
        np.minimum(d, via, out=d)
    return d


def net_edges(net: Network) -> list[tuple[int, int, float]]:
    return [
        (int(s), int(t), float(w))
        for s, t, w in zip(net.edge_src, net.edge_dst, net.edge_weight)
    ]


def fw_distances(net: Network) -> np.ndarray:
    return floyd_warshall(net.n_nodes, net_edges(net))


def node_point(net: Network, i: int) -> GeoPoint:
    return GeoPoint(float(net.lat[i]), float(net.lon[i]))


def inline_closest(net: Network, pois: PoiSet, v: int) -> int:
    """Index (position in the PoiSet) of v's straight-line-nearest POI,
    first-wins on ties."""
    best = None
    best_d = math.inf
    for i, (p, _) in enumerate(pois):
        d = great_circle(node_point(net, v), node_point(net, p))
        if d < best_d:
            best, best_d = i, d
    return best


def _direction_closest(
    net: Network, pois: PoiSet, v: int, dmat: np.ndarray, to_poi: bool
) -> int | None:
    """Position of v's path-nearest POI, or None if every POI is unreachable."""
    best = None
    best_d = math.inf
    for i, (p, _) in enumerate(pois):
        d = dmat[v, p] if to_poi else dmat[p, v]
        if d < best_d:
            best, best_d = i, d
    return best


def track_oracle(
    net: Network, pois: PoiSet, c: str, strict: bool = False
) -> tuple[dict[int, set[int]], int]:
    """Per-node tracking loop: compare the straight-line-nearest POI with
    the path-nearest one; flag mismatches and charge them to the
    straight-line POI.  Returns (per-POI sets keyed by POI node, total).
    """
    dmat = fw_distances(net)

    def flags_for(to_poi: bool) -> list[bool]:
        out = []
        for v in range(net.n_nodes):
            pe = inline_closest(net, pois, v)
            pn = _direction_closest(net, pois, v, dmat, to_poi)
            if pn is None:
                out.append(bool(strict))
            else:
                out.append(pn != pe)
        return out

    if c == "I":
        flags = flags_for(True)
    elif c == "O":
        flags = flags_for(False)
    elif c == "A":
        fi = flags_for(True)
        fo = flags_for(False)
        flags = [a and b for a, b in zip(fi, fo)]
    else:
        raise ValueError(c)

    per_poi: dict[int, set[int]] = {p: set() for p in pois.nodes}
    for v in range(net.n_nodes):
        if flags[v]:
            per_poi[pois.nodes[inline_closest(net, pois, v)]].add(v)
    return per_poi, sum(flags)


def all_simple_path_min(net: Network, s: int, t: int) -> float:
    """Minimum path length by exhaustive simple-path enumeration (tiny graphs)."""
    if s == t:
        return 0.0
    best = math.inf
    adj: dict[int, list[tuple[int, float]]] = {}
    for a, b, w in net_edges(net):
        adj.setdefault(a, []).append((b, w))

    def walk(v: int, seen: set[int], acc: float) -> None:
        nonlocal best
        for u, w in adj.get(v, []):
            if u == t:
                best = min(best, acc + w)
            elif u not in seen:
                walk(u, seen | {u}, acc + w)

    walk(s, {s}, 0.0)
    return best


def straightness_oracle(net: Network, members: list[int], c: str) -> dict[int, float]:
    """Straightness by explicit loops over the induced subgraph."""
    members = sorted(set(int(m) for m in members))
    k = len(members)
    if k == 1:
        return {members[0]: 0.0}
    pos = {m: i for i, m in enumerate(members)}
    sub_edges = [
        (pos[s], pos[t], w)
        for s, t, w in net_edges(net)
        if s in pos and t in pos
    ]
    d = floyd_warshall(k, sub_edges)
    scores: dict[int, float] = {}
    for i, mi in enumerate(members):
        acc = 0.0
        for j, mj in enumerate(members):
            if i == j:
                continue
            de = great_circle(node_point(net, mi), node_point(net, mj))

            def ratio(dn: float) -> float:
                return de / dn if math.isfinite(dn) and dn > 0.0 else 0.0

            if c == "I":
                acc += ratio(d[j, i])
            elif c == "O":
                acc += ratio(d[i, j])
            elif c == "A":
                acc += (ratio(d[i, j]) + ratio(d[j, i])) / 2.0
            else:
                raise ValueError(c)
        scores[mi] = acc / (k - 1)
    return scores


def straightness_argmax(scores: dict[int, float]) -> int:
    """Maximum score, smallest node id on ties."""
    best_node = None
    best = -math.inf
    for node in sorted(scores):
        if scores[node] > best:
            best_node, best = node, scores[node]
    return best_node


def greedy_first_move_oracle(
    net: Network, pois: PoiSet, c: str
) -> tuple[int, int, int] | None:
    """Replay one iteration of the relocation loop independently.

    For every POI: candidate = straightness argmax of its consistent
    perimeter members; score = tracking total with that single replacement.
    Returns (old_node, new_node, new_total) for the strictly best candidate,
    or None when no candidate strictly improves.
    """
    per_poi, total = track_oracle(net, pois, c)
    best: tuple[int, int, int] | None = None
    for i, (p, _) in enumerate(pois):
        perimeter = {
            v for v in range(net.n_nodes) if inline_closest(net, pois, v) == i
        }
        consistent = sorted(perimeter - per_poi[p])
        if not consistent:
            continue
        p_bar = straightness_argmax(straightness_oracle(net, consistent, c))
        if p_bar == p or p_bar in pois.nodes:
            continue
        trial = pois.with_moved(p, p_bar)
        _, trial_total = track_oracle(net, trial, c)
        if best is None or trial_total < best[2]:
            best = (p, p_bar, trial_total)
    if best is None or best[2] >= total:
        return None
    return best
