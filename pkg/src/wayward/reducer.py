"""Greedy relocation of POIs to high-straightness consistent nodes.

Each iteration scores one candidate per unmoved POI — the straightness
argmax of its consistent perimeter members — re-tracks with that single
replacement, and commits the strictly best improvement.  A POI moves at
most once; the loop stops when no candidate strictly lowers the total, so
the total never increases.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import CentralityField, extract_central, straightness
from .inconsistency import ABSOLUTE, DIRECTIONS, INWARD, OUTWARD, InconsistencyReport, track
from .ingest import PoiSet
from .network import Network, NodeId
from .partition import inline_matrix
from .paths import FROM_POI, TO_POI, field_matrix


@dataclass(frozen=True)
class RelocationStep:
    """One committed move and the totals around it."""

    old_poi: NodeId
    new_poi: NodeId
    total_before: int
    total_after: int


@dataclass(frozen=True)
class RelocationPlan:
    direction: str
    moves: tuple[tuple[NodeId, NodeId], ...]
    steps: tuple[RelocationStep, ...]
    totals_before: int
    totals_after: int
    per_poi_after: dict[NodeId, int]
    final_pois: PoiSet

    @property
    def improved(self) -> bool:
        return self.totals_after < self.totals_before


class FieldCache:
    """Per-node distance rows, computed once and reused across evaluations.

    Rows are pure functions of (network, node), so memoizing them cannot
    change any result — it only avoids recomputing fields for POIs that
    persist from one candidate evaluation to the next.
    """

    def __init__(self, net: Network) -> None:
        self.net = net
        self._rows: dict[str, dict[NodeId, np.ndarray]] = {
            "inline": {},
            TO_POI: {},
            FROM_POI: {},
        }

    def _fill(self, kind: str, nodes: np.ndarray) -> None:
        cache = self._rows[kind]
        missing = np.array([p for p in nodes if p not in cache], dtype=np.int64)
        if len(missing) == 0:
            return
        if kind == "inline":
            rows = inline_matrix(self.net, missing)
        else:
            rows = field_matrix(self.net, missing, kind)
        for p, row in zip(missing, rows):
            cache[int(p)] = row

    def rows(self, kind: str, nodes: np.ndarray) -> np.ndarray:
        self._fill(kind, nodes)
        cache = self._rows[kind]
        return np.vstack([cache[int(p)] for p in nodes])


class _Tracker:
    """track() backed by a FieldCache plus a straightness memo."""

    def __init__(self, net: Network, c: str, strict_unreachable: bool) -> None:
        self.net = net
        self.c = c
        self.strict = strict_unreachable
        self.fields = FieldCache(net)
        self._straightness: dict[bytes, CentralityField] = {}

    def track(self, pois: PoiSet) -> InconsistencyReport:
        nodes = pois.node_array()
        inline = self.fields.rows("inline", nodes)
        to = self.fields.rows(TO_POI, nodes) if self.c in (INWARD, ABSOLUTE) else None
        frm = self.fields.rows(FROM_POI, nodes) if self.c in (OUTWARD, ABSOLUTE) else None
        return track(
            self.net,
            pois,
            self.c,
            self.strict,
            inline_fields=inline,
            to_fields=to,
            from_fields=frm,
        )

    def straightness(self, members: np.ndarray) -> CentralityField:
        key = members.tobytes()
        field = self._straightness.get(key)
        if field is None:
            field = straightness(self.net, members, self.c)
            self._straightness[key] = field
        return field


def reduce(
    net: Network,
    pois: PoiSet,
    c: str,
    strict_unreachable: bool = False,
    movable: set[NodeId] | None = None,
) -> RelocationPlan:
    """Relocate POIs one at a time while the total inconsistency count drops.

    Per iteration, every not-yet-moved POI p proposes one candidate: the
    straightness argmax of its consistent perimeter members.  The proposal
    is scored by re-tracking with p replaced, and the strictly lowest total
    wins; equal totals never commit, so the loop terminates after at most
    one move per POI and the final total never exceeds the initial one.

    movable, when given, restricts which of the original POIs may move.
    """
    if c not in DIRECTIONS:
        raise ValueError(f"unknown direction {c!r}; expected one of {DIRECTIONS}")
    tracker = _Tracker(net, c, strict_unreachable)
    current = pois
    report = tracker.track(current)
    totals_before = report.total

    if movable is None:
        unmoved = set(range(len(pois)))
    else:
        unknown = movable - set(pois.nodes)
        if unknown:
            raise ValueError(f"movable nodes {sorted(unknown)} are not POIs")
        unmoved = {i for i, node in enumerate(pois.nodes) if node in movable}

    moves: list[tuple[NodeId, NodeId]] = []
    steps: list[RelocationStep] = []
    while unmoved:
        best: tuple[int, int, NodeId, NodeId, InconsistencyReport] | None = None
        for pos in sorted(unmoved):
            p = current.nodes[pos]
            members = report.consistent_nodes_of(p)
            if len(members) == 0:
                continue
            p_bar = extract_central(tracker.straightness(members))
            if p_bar == p or p_bar in current.nodes:
                continue
            trial = current.with_moved(p, p_bar)
            trial_report = tracker.track(trial)
            if best is None or trial_report.total < best[0]:
                best = (trial_report.total, pos, p, p_bar, trial_report)
        if best is None or best[0] >= report.total:
            break
        new_total, pos, p, p_bar, trial_report = best
        steps.append(RelocationStep(p, p_bar, report.total, new_total))
        moves.append((p, p_bar))
        current = current.with_moved(p, p_bar)
        report = trial_report
        unmoved.discard(pos)

    per_poi_after = {p: report.count_of(p) for p in current.nodes}
    return RelocationPlan(
        direction=c,
        moves=tuple(moves),
        steps=tuple(steps),
        totals_before=totals_before,
        totals_after=report.total,
        per_poi_after=per_poi_after,
        final_pois=current,
    )


def what_if(
    net: Network,
    pois: PoiSet,
    c: str,
    add: NodeId | None = None,
    remove: NodeId | None = None,
    move: tuple[NodeId, NodeId] | None = None,
    strict_unreachable: bool = False,
    label: str | None = None,
) -> InconsistencyReport:
    """Track the edited POI set without touching any stored state.

    Edits apply add, then remove, then move; each must leave a valid set
    (distinct nodes, non-empty), and the network is never mutated.
    """
    edited = pois
    if add is not None:
        if not 0 <= add < net.n_nodes:
            raise ValueError(f"node {add} not in network")
        edited = edited.with_added(add, label)
    if remove is not None:
        edited = edited.with_removed(remove)
    if move is not None:
        old, new = move
        if not 0 <= new < net.n_nodes:
            raise ValueError(f"node {new} not in network")
        edited = edited.with_moved(old, new)
    return track(net, edited, c, strict_unreachable)
