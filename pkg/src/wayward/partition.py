"""Node-to-POI assignments under the three metrics.

"inline" assigns every node to its straight-line-nearest POI; "network_to"
and "network_from" assign by shortest directed path to / from the POI.
Equidistant nodes go to the POI earliest in PoiSet order, so the member
sets are disjoint and cover every assigned node; nodes unreachable from or
to every POI (network metrics only) stay unassigned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geo import gc_combine
from .ingest import PoiSet
from .network import Network, NodeId
from .paths import FROM_POI, TO_POI, field_matrix

INLINE = "inline"
NETWORK_TO = "network_to"
NETWORK_FROM = "network_from"


@dataclass(frozen=True)
class Partition:
    """Per-node assignment to the closest POI under one metric.

    poi_index[v] is a position in pois (or -1: unassigned); dist[v] is the
    distance to the assigned POI (inf where unassigned).
    """

    metric: str
    pois: PoiSet
    poi_index: np.ndarray
    dist: np.ndarray

    def assignment(self, v: NodeId) -> tuple[NodeId, float] | None:
        i = int(self.poi_index[v])
        if i < 0:
            return None
        return self.pois.nodes[i], float(self.dist[v])

    def members_of(self, poi_node: NodeId) -> np.ndarray:
        """Ascending node ids assigned to the given POI."""
        return np.flatnonzero(self.poi_index == self.pois.index_of(poi_node))

    def member_lists(self) -> dict[NodeId, np.ndarray]:
        return {p: self.members_of(p) for p in self.pois.nodes}

    @property
    def unassigned(self) -> np.ndarray:
        return np.flatnonzero(self.poi_index < 0)


def inline_matrix(net: Network, poi_nodes: np.ndarray) -> np.ndarray:
    """Great-circle distances, one row per POI node, one column per node."""
    rows = net.trig.take(np.asarray(poi_nodes, dtype=np.int64)).col()
    return gc_combine(rows, net.trig)


def _assign(metric: str, pois: PoiSet, fields: np.ndarray) -> Partition:
    # np.argmin returns the first minimum, which is exactly the
    # earliest-in-PoiSet-order tie rule
    best = np.argmin(fields, axis=0)
    cols = np.arange(fields.shape[1])
    dist = fields[best, cols]
    poi_index = np.where(np.isinf(dist), -1, best).astype(np.int64)
    return Partition(metric, pois, poi_index, dist)


def perimeter_partition(net: Network, pois: PoiSet, fields: np.ndarray | None = None) -> Partition:
    """Assign every node to its great-circle-nearest POI.

    fields, when given, must be inline_matrix(net, pois.node_array());
    callers that keep per-POI rows cached pass them to skip recomputation.
    """
    if fields is None:
        fields = inline_matrix(net, pois.node_array())
    return _assign(INLINE, pois, fields)


def network_partition(
    net: Network,
    pois: PoiSet,
    direction: str,
    fields: np.ndarray | None = None,
) -> Partition:
    """Assign nodes to their path-nearest POI in the given direction.

    direction "to_poi" uses shortest v -> poi paths, "from_poi" poi -> v.
    Nodes unreachable in that direction from every POI stay unassigned.
    """
    if direction not in (TO_POI, FROM_POI):
        raise ValueError(f"unknown direction {direction!r}")
    if fields is None:
        fields = field_matrix(net, pois.node_array(), direction)
    metric = NETWORK_TO if direction == TO_POI else NETWORK_FROM
    return _assign(metric, pois, fields)
