"""Static map figures rendered to image files.

Companion to the GeoJSON export for quick visual inspection: the street
network with nodes shaded by straightness (darker = higher), inconsistent
nodes flagged, POI markers, and relocation arrows.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection

from .centrality import CentralityField
from .inconsistency import InconsistencyReport
from .ingest import PoiSet
from .network import Network
from .reducer import RelocationPlan


def render_figure(
    net: Network,
    path: str,
    *,
    report: InconsistencyReport | None = None,
    centrality: CentralityField | None = None,
    pois: PoiSet | None = None,
    plan: RelocationPlan | None = None,
    title: str | None = None,
    dpi: int = 150,
) -> str:
    """Draw the network map and save it to path (format by extension)."""
    if pois is None and report is not None:
        pois = report.pois

    fig, ax = plt.subplots(figsize=(9, 9))
    segs = np.stack(
        [
            np.column_stack([net.lon[net.edge_src], net.lat[net.edge_src]]),
            np.column_stack([net.lon[net.edge_dst], net.lat[net.edge_dst]]),
        ],
        axis=1,
    )
    ax.add_collection(LineCollection(segs, colors="#c8c8c8", linewidths=0.5, zorder=1))

    if centrality is not None and len(centrality.members):
        rest = np.setdiff1d(np.arange(net.n_nodes), centrality.members)
        ax.scatter(net.lon[rest], net.lat[rest], s=4, c="#dddddd", zorder=2)
        ax.scatter(
            net.lon[centrality.members],
            net.lat[centrality.members],
            s=8,
            c=centrality.scores,
            cmap="Greys",  # darker = higher
            vmin=float(centrality.scores.min()),
            vmax=float(centrality.scores.max()) or 1.0,
            zorder=3,
        )
    else:
        ax.scatter(net.lon, net.lat, s=4, c="#999999", zorder=2)

    if report is not None and report.flags.any():
        bad = np.flatnonzero(report.flags)
        ax.scatter(
            net.lon[bad],
            net.lat[bad],
            s=16,
            facecolors="none",
            edgecolors="crimson",
            linewidths=0.8,
            zorder=4,
            label=f"inconsistent ({len(bad)})",
        )

    if pois is not None:
        pn = pois.node_array()
        ax.scatter(
            net.lon[pn], net.lat[pn], s=120, marker="*", c="royalblue", zorder=5,
            label="POIs",
        )
    if plan is not None:
        for old, new in plan.moves:
            ax.annotate(
                "",
                xy=(net.lon[new], net.lat[new]),
                xytext=(net.lon[old], net.lat[old]),
                arrowprops=dict(arrowstyle="->", color="darkorange", lw=1.6),
                zorder=6,
            )
        if plan.moves:
            news = np.array([n for _, n in plan.moves])
            ax.scatter(
                net.lon[news], net.lat[news], s=120, marker="*", c="darkorange",
                zorder=6, label="proposed",
            )

    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    handles, _ = ax.get_legend_handles_labels()
    if handles:
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
