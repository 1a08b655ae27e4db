"""Human- and machine-readable outputs.

Plain-text inconsistency tables (one row per POI plus a total), before/after
comparisons, relocation-plan summaries, and GeoJSON overlays for maps.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from .centrality import CentralityField
from .inconsistency import InconsistencyReport
from .ingest import PoiSet
from .network import Network
from .partition import Partition
from .reducer import RelocationPlan

_DIRECTION_WORDS = {"I": "inward", "O": "outward", "A": "absolute"}


def _percent(count: int, total: int) -> str:
    pct = 0.0 if total == 0 else 100.0 * count / total
    return f"{pct:.1f}%"


def table_rows(report: InconsistencyReport) -> list[tuple[str, int, str]]:
    """(label, count, percent) per POI in PoiSet order, plus a Total row."""
    total = report.total
    rows = [
        (label, report.count_of(node), _percent(report.count_of(node), total))
        for node, label in report.pois
    ]
    rows.append(("Total", total, _percent(total, total)))
    return rows


def render_table(report: InconsistencyReport) -> str:
    """Fixed-width text table of per-POI inconsistency counts."""
    rows = table_rows(report)
    label_w = max(len("POI"), max(len(r[0]) for r in rows))
    count_w = max(len("#"), max(len(str(r[1])) for r in rows))
    pct_w = max(len("%"), max(len(r[2]) for r in rows))
    head = f"{'POI':<{label_w}}  {'#':>{count_w}}  {'%':>{pct_w}}"
    sep = "-" * len(head)
    body = [f"{l:<{label_w}}  {c:>{count_w}}  {p:>{pct_w}}" for l, c, p in rows[:-1]]
    l, c, p = rows[-1]
    total_line = f"{l:<{label_w}}  {c:>{count_w}}  {p:>{pct_w}}"
    direction = _DIRECTION_WORDS[report.direction]
    return "\n".join(
        [f"Inconsistencies ({direction})", head, sep, *body, sep, total_line]
    )


def render_comparison(
    before: InconsistencyReport,
    after: InconsistencyReport,
    titles: tuple[str, str] = ("Original", "Enhanced"),
) -> str:
    """Side-by-side per-POI counts for two reports over the same labels."""
    if before.pois.labels != after.pois.labels:
        raise ValueError("reports cover different POI sets")
    rows_b = table_rows(before)
    rows_a = table_rows(after)
    label_w = max(max(len(r[0]) for r in rows_b), len("POI"))
    bw = max(len(f"{c} ({p})") for _, c, p in rows_b)
    bw = max(bw, len(titles[0]))
    aw = max(len(f"{c} ({p})") for _, c, p in rows_a)
    aw = max(aw, len(titles[1]))
    head = f"{'POI':<{label_w}}  {titles[0]:>{bw}}  {titles[1]:>{aw}}"
    sep = "-" * len(head)
    lines = [f"Inconsistencies ({_DIRECTION_WORDS[before.direction]})", head, sep]
    for (label, cb, pb), (_, ca, pa) in zip(rows_b[:-1], rows_a[:-1]):
        lines.append(
            f"{label:<{label_w}}  {f'{cb} ({pb})':>{bw}}  {f'{ca} ({pa})':>{aw}}"
        )
    lines.append(sep)
    _, cb, pb = rows_b[-1]
    _, ca, pa = rows_a[-1]
    lines.append(
        f"{'Total':<{label_w}}  {f'{cb} ({pb})':>{bw}}  {f'{ca} ({pa})':>{aw}}"
    )
    return "\n".join(lines)


def render_plan(plan: RelocationPlan, pois: PoiSet) -> str:
    """Move list plus totals for a relocation plan (pois: the original set)."""
    lines = []
    if not plan.moves:
        lines.append("no moves")
    else:
        for step in plan.steps:
            label = pois.label_of(step.old_poi) if step.old_poi in pois.nodes else str(step.old_poi)
            lines.append(
                f"move {label} (node {step.old_poi}) -> node {step.new_poi}"
                f"  [total {step.total_before} -> {step.total_after}]"
            )
    lines.append(
        f"total inconsistencies: {plan.totals_before} -> {plan.totals_after}"
    )
    return "\n".join(lines)


def _scaled(scores: np.ndarray) -> np.ndarray:
    lo, hi = float(scores.min()), float(scores.max())
    if hi <= lo:
        return np.zeros_like(scores)
    return (scores - lo) / (hi - lo)


def export_geojson(
    net: Network,
    *,
    partition: Partition | None = None,
    report: InconsistencyReport | None = None,
    centrality: CentralityField | None = None,
    pois: PoiSet | None = None,
    plan: RelocationPlan | None = None,
    bbox: tuple[float, float, float, float] | None = None,
) -> dict[str, Any]:
    """Nodes as Point features and edges as LineStrings, with layer properties.

    Coordinates are [longitude, latitude].  Optional layers attach
    properties: POI assignment (partition or report), inconsistent flags,
    raw and min-max-scaled straightness, and POI/relocation roles.  When a
    POI set is given, each POI additionally gets a standalone marker Point
    feature (role "poi") so map clients can draw the marker layer without
    scanning node properties.  bbox (min_lon, min_lat, max_lon, max_lat)
    restricts nodes, markers, edges and relocation arrows to those with an
    endpoint inside.
    """
    if pois is None and report is not None:
        pois = report.pois
    assign_index = None
    assign_pois = None
    if report is not None:
        assign_index = report.inline_index
        assign_pois = report.pois
    elif partition is not None:
        assign_index = partition.poi_index
        assign_pois = partition.pois

    cent_scaled = _scaled(centrality.scores) if centrality is not None else None
    cent_pos: dict[int, int] = (
        {int(m): i for i, m in enumerate(centrality.members)}
        if centrality is not None
        else {}
    )
    roles: dict[int, str] = {}
    if pois is not None:
        for node, _ in pois:
            roles[node] = "poi"
    if plan is not None:
        for old, new in plan.moves:
            roles[old] = "old_poi"
            roles[new] = "new_poi"

    def inside(i: int) -> bool:
        if bbox is None:
            return True
        min_lon, min_lat, max_lon, max_lat = bbox
        return min_lon <= net.lon[i] <= max_lon and min_lat <= net.lat[i] <= max_lat

    features: list[dict[str, Any]] = []
    for i in range(net.n_nodes):
        if not inside(i):
            continue
        props: dict[str, Any] = {"id": i}
        if net.external_refs is not None and net.external_refs[i] is not None:
            props["external_ref"] = net.external_refs[i]
        if assign_index is not None:
            k = int(assign_index[i])
            props["poi"] = assign_pois.labels[k] if k >= 0 else None
        if report is not None:
            props["inconsistent"] = bool(report.flags[i])
        if i in cent_pos:
            j = cent_pos[i]
            props["straightness"] = float(centrality.scores[j])
            props["straightness_scaled"] = float(cent_scaled[j])
        if i in roles:
            props["role"] = roles[i]
            if pois is not None and i in pois.nodes:
                props["label"] = pois.label_of(i)
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Point",
                    "coordinates": [float(net.lon[i]), float(net.lat[i])],
                },
                "properties": props,
            }
        )
    if pois is not None:
        for node, label in pois:
            if not inside(node):
                continue
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "Point",
                        "coordinates": [float(net.lon[node]), float(net.lat[node])],
                    },
                    "properties": {"role": "poi", "label": label, "node": int(node)},
                }
            )
    for s, t, w in zip(net.edge_src, net.edge_dst, net.edge_weight):
        if not (inside(int(s)) or inside(int(t))):
            continue
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "LineString",
                    "coordinates": [
                        [float(net.lon[s]), float(net.lat[s])],
                        [float(net.lon[t]), float(net.lat[t])],
                    ],
                },
                "properties": {"source": int(s), "target": int(t), "weight": float(w)},
            }
        )
    if plan is not None:
        for old, new in plan.moves:
            if not (inside(old) or inside(new)):
                continue
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "LineString",
                        "coordinates": [
                            [float(net.lon[old]), float(net.lat[old])],
                            [float(net.lon[new]), float(net.lat[new])],
                        ],
                    },
                    "properties": {"role": "relocation", "from": int(old), "to": int(new)},
                }
            )
    return {"type": "FeatureCollection", "features": features}
