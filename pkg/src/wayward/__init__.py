"""Detect and reduce distance-based inconsistencies in city street networks.

A node is "inconsistent" for a point of interest when the POI nearest by
straight-line distance differs from the POI nearest by street travel.  The
package tracks such nodes per POI and direction (inward/outward/absolute),
and greedily relocates POIs toward high-straightness street positions,
never increasing the total count.
"""
from .centrality import CentralityField, extract_central, straightness
from .geo import EARTH_RADIUS_M, GeoPoint, great_circle
from .inconsistency import (
    ABSOLUTE,
    INWARD,
    OUTWARD,
    InconsistencyReport,
    parse_direction,
    track,
)
from .ingest import (
    HighwayProfile,
    ParseError,
    PoiSet,
    largest_scc,
    parse_edge_list,
    parse_osm_xml,
    snap_pois,
    write_edge_list,
)
from .network import Edge, Network, Node, NodeId, build, reverse_view
from .partition import Partition, network_partition, perimeter_partition
from .paths import (
    UNREACHABLE,
    DistanceField,
    SubgraphDistances,
    distances_from,
    distances_to,
    pairwise_in_subgraph,
)
from .reducer import RelocationPlan, RelocationStep, reduce, what_if
from .report import export_geojson, render_comparison, render_plan, render_table

__version__ = "0.1.0"

__all__ = [
    "ABSOLUTE",
    "CentralityField",
    "DistanceField",
    "EARTH_RADIUS_M",
    "Edge",
    "GeoPoint",
    "HighwayProfile",
    "InconsistencyReport",
    "INWARD",
    "Network",
    "Node",
    "NodeId",
    "OUTWARD",
    "ParseError",
    "Partition",
    "PoiSet",
    "RelocationPlan",
    "RelocationStep",
    "SubgraphDistances",
    "UNREACHABLE",
    "build",
    "distances_from",
    "distances_to",
    "export_geojson",
    "extract_central",
    "great_circle",
    "largest_scc",
    "network_partition",
    "pairwise_in_subgraph",
    "parse_direction",
    "parse_edge_list",
    "parse_osm_xml",
    "perimeter_partition",
    "reduce",
    "render_comparison",
    "render_plan",
    "render_table",
    "reverse_view",
    "snap_pois",
    "straightness",
    "track",
    "what_if",
    "write_edge_list",
]
