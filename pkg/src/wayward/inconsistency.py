"""Classify nodes as inward, outward, or absolute inconsistencies.

A node is inconsistent when its straight-line-nearest POI differs from its
street-path-nearest one: inward (I) compares travel TO the POI, outward (O)
travel FROM it, absolute (A) is the intersection of both.  Every
inconsistent node is charged to its straight-line-nearest POI.

Nodes that cannot reach (or be reached from) any POI in the relevant
direction are skipped — not counted inconsistent — unless strict mode is on.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ingest import PoiSet
from .network import Network, NodeId
from .partition import network_partition, perimeter_partition
from .paths import FROM_POI, TO_POI

INWARD = "I"
OUTWARD = "O"
ABSOLUTE = "A"
DIRECTIONS = (INWARD, OUTWARD, ABSOLUTE)

_DIRECTION_NAMES = {
    "i": INWARD,
    "inward": INWARD,
    "o": OUTWARD,
    "outward": OUTWARD,
    "a": ABSOLUTE,
    "absolute": ABSOLUTE,
}


def parse_direction(value: str) -> str:
    """Canonical single-letter direction from 'inward'/'outward'/'absolute' or I/O/A."""
    try:
        return _DIRECTION_NAMES[value.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown direction {value!r}; expected inward, outward or absolute"
        ) from None


@dataclass(frozen=True, eq=False)
class InconsistencyReport:
    """Inconsistent node sets per POI, for one direction.

    flags marks inconsistent nodes; inline_index holds every node's
    straight-line POI assignment (a position in pois), which is the POI the
    node is charged to.
    """

    direction: str
    pois: PoiSet
    flags: np.ndarray
    inline_index: np.ndarray
    strict_unreachable: bool = False

    @property
    def total(self) -> int:
        return int(self.flags.sum())

    def inconsistent_nodes_of(self, poi_node: NodeId) -> np.ndarray:
        i = self.pois.index_of(poi_node)
        return np.flatnonzero(self.flags & (self.inline_index == i))

    def consistent_nodes_of(self, poi_node: NodeId) -> np.ndarray:
        """The POI's perimeter minus its inconsistent nodes."""
        i = self.pois.index_of(poi_node)
        return np.flatnonzero(~self.flags & (self.inline_index == i))

    def count_of(self, poi_node: NodeId) -> int:
        i = self.pois.index_of(poi_node)
        return int((self.flags & (self.inline_index == i)).sum())

    @cached_property
    def per_poi(self) -> dict[NodeId, frozenset[NodeId]]:
        return {
            p: frozenset(int(v) for v in self.inconsistent_nodes_of(p))
            for p in self.pois.nodes
        }

    @cached_property
    def consistent_per_poi(self) -> dict[NodeId, frozenset[NodeId]]:
        return {
            p: frozenset(int(v) for v in self.consistent_nodes_of(p))
            for p in self.pois.nodes
        }

    def same_sets(self, other: "InconsistencyReport") -> bool:
        return (
            np.array_equal(self.flags, other.flags)
            and np.array_equal(self.inline_index, other.inline_index)
            and self.pois.nodes == other.pois.nodes
        )


def _direction_flags(
    net: Network,
    pois: PoiSet,
    direction: str,
    inline_index: np.ndarray,
    strict: bool,
    fields: np.ndarray | None,
) -> np.ndarray:
    npart = network_partition(net, pois, direction, fields=fields)
    assigned = npart.poi_index >= 0
    flags = assigned & (npart.poi_index != inline_index)
    if strict:
        flags |= ~assigned
    return flags


def track(
    net: Network,
    pois: PoiSet,
    c: str,
    strict_unreachable: bool = False,
    *,
    inline_fields: np.ndarray | None = None,
    to_fields: np.ndarray | None = None,
    from_fields: np.ndarray | None = None,
) -> InconsistencyReport:
    """Find every node whose straight-line and street-path nearest POIs differ.

    c is one of "I" (travel to the POI), "O" (travel from it), "A" (both).
    The optional *_fields arguments accept precomputed distance matrices
    (one row per POI, in PoiSet order) so batch callers can reuse them.
    """
    if c not in DIRECTIONS:
        raise ValueError(f"unknown direction {c!r}; expected one of {DIRECTIONS}")
    peri = perimeter_partition(net, pois, fields=inline_fields)
    inline_index = peri.poi_index
    if c == INWARD:
        flags = _direction_flags(net, pois, TO_POI, inline_index, strict_unreachable, to_fields)
    elif c == OUTWARD:
        flags = _direction_flags(net, pois, FROM_POI, inline_index, strict_unreachable, from_fields)
    else:
        flags = _direction_flags(
            net, pois, TO_POI, inline_index, strict_unreachable, to_fields
        ) & _direction_flags(
            net, pois, FROM_POI, inline_index, strict_unreachable, from_fields
        )
    return InconsistencyReport(c, pois, flags, inline_index, strict_unreachable)
