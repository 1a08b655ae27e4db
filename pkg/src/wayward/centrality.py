"""Straightness centrality over induced subgraphs.

A member scores high when street-path distances to the other members are
close to the straight-line distances: score(i) = mean over j != i of
d_inline(i,j) / d_path(i,j), computed within the induced subgraph.  Scores
guide the relocation search toward well-connected placements.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geo import gc_combine
from .inconsistency import ABSOLUTE, DIRECTIONS, INWARD, OUTWARD
from .network import Network, NodeId
from .paths import iter_subgraph_rows, member_array


@dataclass(frozen=True)
class CentralityField:
    """Per-member straightness scores, each in [0, 1] up to rounding."""

    direction: str
    members: np.ndarray
    scores: np.ndarray

    def score_of(self, node: NodeId) -> float:
        i = int(np.searchsorted(self.members, node))
        if i >= len(self.members) or self.members[i] != node:
            raise KeyError(f"node {node} not a member")
        return float(self.scores[i])


def straightness(net: Network, members, c: str, block: int = 1024) -> CentralityField:
    """Straightness score of every member within the induced subgraph.

    Direction c orients the path distances: "I" scores candidate i by
    travel from the other members to i (j -> i), "O" by travel from i
    outward (i -> j), "A" averages both ratios.  Pairs that are unreachable
    in the subgraph (or coincident, path length 0) contribute 0, which
    penalizes poorly connected candidates.  A single member scores 0.
    """
    if c not in DIRECTIONS:
        raise ValueError(f"unknown direction {c!r}; expected one of {DIRECTIONS}")
    members = member_array(members)
    k = len(members)
    if k == 0:
        raise ValueError("empty member set")
    if k == 1:
        return CentralityField(c, members, np.zeros(1))
    if members[0] < 0 or members[-1] >= net.n_nodes:
        raise ValueError("members outside the network")

    trig = net.trig.take(members)
    row_sums = np.zeros(k)
    col_sums = np.zeros(k)
    # ratio[a, b] = d_inline(a, b) / d_path(a -> b); row sums give the
    # outward view of each source, column sums the inward view of each target
    for idx, dn in iter_subgraph_rows(net, members, block=block):
        de = gc_combine(trig.take(idx).col(), trig)
        valid = np.isfinite(dn) & (dn > 0.0)
        ratio = np.zeros_like(dn)
        np.divide(de, dn, out=ratio, where=valid)
        row_sums[idx] = ratio.sum(axis=1)
        col_sums += ratio.sum(axis=0)

    norm = 1.0 / (k - 1)
    if c == INWARD:
        scores = col_sums * norm
    elif c == OUTWARD:
        scores = row_sums * norm
    else:
        scores = (row_sums + col_sums) * (0.5 * norm)
    return CentralityField(c, members, scores)


def extract_central(field: CentralityField) -> NodeId:
    """The member with the maximum score; ties go to the smallest NodeId."""
    if len(field.members) == 0:
        raise ValueError("empty centrality field")
    # argmax returns the first maximum; members are sorted ascending, so
    # ties resolve to the smallest NodeId
    return int(field.members[int(np.argmax(field.scores))])
