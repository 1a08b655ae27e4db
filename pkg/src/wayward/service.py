"""Local HTTP API exposing the engine to interactive clients.

Sessions hold an immutable network plus an evolving POI set; queries
(track, what-if, layers, snap) never mutate a session, while commit applies
an edit and recomputes the baseline.  JSON bodies throughout; map geometry
is GeoJSON.
"""
from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import fixtures as fixture_lib
from . import reducer as reducer_lib
from .centrality import CentralityField, straightness
from .geo import GeoPoint, TrigCache, gc_combine
from .inconsistency import InconsistencyReport, parse_direction, track
from .ingest import PROFILES, ParseError, PoiSet, parse_edge_list, parse_osm_xml, snap_pois
from .network import Network
from .report import export_geojson

# above this size, layer responses skip per-perimeter straightness unless
# explicitly requested
CENTRALITY_AUTO_LIMIT = 10_000

REDUCE_TIMEOUT_S = 120.0


class PoiCoord(BaseModel):
    lat: float
    lon: float
    label: str


class CreateSession(BaseModel):
    netgeo: str | None = None
    osm_xml: str | None = None
    fixture: str | None = None
    seed: int | None = None
    profile: str = "default"
    direction: str = "inward"
    strict_unreachable: bool = False
    pois: list[PoiCoord] | None = None


class Edit(BaseModel):
    add: int | None = None
    remove: int | None = None
    move: tuple[int, int] | None = None
    label: str | None = None


class CommitBody(Edit):
    moves: list[tuple[int, int]] | None = None


class TrackBody(BaseModel):
    direction: str | None = None


class ReduceBody(BaseModel):
    direction: str | None = None
    movable: list[int] | None = None
    timeout_s: float = Field(default=REDUCE_TIMEOUT_S, gt=0)


@dataclass
class Session:
    id: str
    net: Network
    pois: PoiSet
    direction: str
    strict_unreachable: bool
    baseline: InconsistencyReport
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _report_json(report: InconsistencyReport) -> dict:
    return {
        "direction": report.direction,
        "strict_unreachable": report.strict_unreachable,
        "total": report.total,
        "pois": [
            {"node": int(node), "label": label, "count": report.count_of(node)}
            for node, label in report.pois
        ],
    }


def _plan_json(plan: reducer_lib.RelocationPlan) -> dict:
    return {
        "direction": plan.direction,
        "moves": [[int(a), int(b)] for a, b in plan.moves],
        "steps": [
            {
                "old_poi": int(s.old_poi),
                "new_poi": int(s.new_poi),
                "total_before": s.total_before,
                "total_after": s.total_after,
            }
            for s in plan.steps
        ],
        "totals_before": plan.totals_before,
        "totals_after": plan.totals_after,
        "improved": plan.improved,
        "per_poi_after": [
            {"node": int(node), "label": label, "count": plan.per_poi_after[node]}
            for node, label in plan.final_pois
        ],
        "final_pois": [
            {"node": int(node), "label": label} for node, label in plan.final_pois
        ],
    }


def _apply_edit(net: Network, pois: PoiSet, edit: Edit) -> PoiSet:
    """add -> remove -> move, each validated; raises ValueError on bad edits."""
    edited = pois
    if edit.add is not None:
        if not 0 <= edit.add < net.n_nodes:
            raise ValueError(f"node {edit.add} not in network")
        edited = edited.with_added(edit.add, edit.label)
    if edit.remove is not None:
        edited = edited.with_removed(edit.remove)
    if edit.move is not None:
        old, new = edit.move
        if not 0 <= new < net.n_nodes:
            raise ValueError(f"node {new} not in network")
        edited = edited.with_moved(old, new)
    return edited


def _edit_error(exc: Exception) -> HTTPException:
    msg = str(exc)
    status = 409 if "duplicate POI" in msg else 400
    return HTTPException(status_code=status, detail=msg)


def _consistent_straightness(
    net: Network, report: InconsistencyReport
) -> CentralityField | None:
    """Straightness of each POI's consistent perimeter members, merged.

    Colors the map the way candidate selection sees it: per-POI consistent
    subgraphs; inconsistent nodes stay unscored (they are flagged instead).
    """
    members_all: list[np.ndarray] = []
    scores_all: list[np.ndarray] = []
    for p in report.pois.nodes:
        members = report.consistent_nodes_of(p)
        if len(members) == 0:
            continue
        f = straightness(net, members, report.direction)
        members_all.append(f.members)
        scores_all.append(f.scores)
    if not members_all:
        return None
    members = np.concatenate(members_all)
    scores = np.concatenate(scores_all)
    order = np.argsort(members)
    return CentralityField(report.direction, members[order], scores[order])


def create_app() -> FastAPI:
    app = FastAPI(title="wayward", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()
    executor = ThreadPoolExecutor(max_workers=2)

    def get_session(session_id: str) -> Session:
        with store_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return session

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession) -> dict:
        sources = [s for s in (body.netgeo, body.osm_xml, body.fixture) if s]
        if len(sources) != 1:
            raise HTTPException(
                status_code=422,
                detail="exactly one of netgeo, osm_xml or fixture is required",
            )
        pois: PoiSet | None = None
        try:
            if body.netgeo is not None:
                net, pois = parse_edge_list(body.netgeo)
            elif body.osm_xml is not None:
                if body.profile not in PROFILES:
                    raise ParseError(f"unknown profile {body.profile!r}")
                net = parse_osm_xml(body.osm_xml, PROFILES[body.profile])
            else:
                net, pois = fixture_lib.load_fixture(body.fixture, body.seed)
        except (ParseError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        try:
            direction = parse_direction(body.direction)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        if body.pois:
            try:
                pois = snap_pois(
                    net, [(GeoPoint(p.lat, p.lon), p.label) for p in body.pois]
                )
            except ValueError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from None
        if pois is None:
            raise HTTPException(
                status_code=422,
                detail="no POIs: provide P lines, snap coordinates, or a fixture with POIs",
            )
        baseline = track(net, pois, direction, body.strict_unreachable)
        session = Session(
            id=uuid.uuid4().hex[:12],
            net=net,
            pois=pois,
            direction=direction,
            strict_unreachable=body.strict_unreachable,
            baseline=baseline,
        )
        with store_lock:
            sessions[session.id] = session
        return {
            "session_id": session.id,
            "n_nodes": net.n_nodes,
            "n_edges": net.n_edges,
            "direction": direction,
            "pois": [{"node": int(n), "label": l} for n, l in pois],
            "baseline": _report_json(baseline),
        }

    @app.get("/sessions/{session_id}/layers")
    def layers(
        session_id: str,
        bbox: str | None = Query(default=None),
        centrality: str = Query(default="auto", pattern="^(auto|on|off)$"),
    ) -> dict:
        session = get_session(session_id)
        box = None
        if bbox is not None:
            parts = bbox.split(",")
            if len(parts) != 4:
                raise HTTPException(
                    status_code=400,
                    detail="bbox must be min_lon,min_lat,max_lon,max_lat",
                )
            try:
                box = tuple(float(v) for v in parts)
            except ValueError:
                raise HTTPException(status_code=400, detail="bbox values must be numbers") from None
        want_centrality = centrality == "on" or (
            centrality == "auto" and session.net.n_nodes <= CENTRALITY_AUTO_LIMIT
        )
        with session.lock:
            pois, baseline = session.pois, session.baseline
        cent = _consistent_straightness(session.net, baseline) if want_centrality else None
        return export_geojson(
            session.net, report=baseline, pois=pois, centrality=cent, bbox=box
        )

    @app.get("/sessions/{session_id}/snap")
    def snap(session_id: str, lat: float, lon: float) -> dict:
        session = get_session(session_id)
        try:
            point = GeoPoint(lat, lon)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        d = gc_combine(
            TrigCache(np.array([point.lat]), np.array([point.lon])), session.net.trig
        )
        node = int(np.argmin(d))
        out = {
            "node": node,
            "lat": float(session.net.lat[node]),
            "lon": float(session.net.lon[node]),
            "distance_m": float(d[node]),
        }
        with session.lock:
            if node in session.pois.nodes:
                out["label"] = session.pois.label_of(node)
        return out

    @app.post("/sessions/{session_id}/track")
    def track_endpoint(session_id: str, body: TrackBody | None = None) -> dict:
        session = get_session(session_id)
        with session.lock:
            if body is not None and body.direction is not None:
                try:
                    direction = parse_direction(body.direction)
                except ValueError as exc:
                    raise HTTPException(status_code=400, detail=str(exc)) from None
                if direction != session.direction:
                    session.direction = direction
                    session.baseline = track(
                        session.net, session.pois, direction, session.strict_unreachable
                    )
            return _report_json(session.baseline)

    @app.post("/sessions/{session_id}/whatif")
    def whatif(session_id: str, edit: Edit) -> dict:
        session = get_session(session_id)
        with session.lock:
            pois, direction, strict = (
                session.pois,
                session.direction,
                session.strict_unreachable,
            )
            baseline = session.baseline
        try:
            edited = _apply_edit(session.net, pois, edit)
        except (ValueError, KeyError) as exc:
            raise _edit_error(exc) from None
        report = track(session.net, edited, direction, strict)
        return {
            "report": _report_json(report),
            "diff": {
                "total_before": baseline.total,
                "total_after": report.total,
                "delta": report.total - baseline.total,
            },
        }

    @app.post("/sessions/{session_id}/reduce")
    def reduce_endpoint(session_id: str, body: ReduceBody | None = None) -> dict:
        session = get_session(session_id)
        body = body or ReduceBody()
        with session.lock:
            pois = session.pois
            direction = session.direction
            strict = session.strict_unreachable
        if body.direction is not None:
            try:
                direction = parse_direction(body.direction)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from None
        movable = set(body.movable) if body.movable is not None else None
        future = executor.submit(
            reducer_lib.reduce, session.net, pois, direction, strict, movable
        )
        try:
            plan = future.result(timeout=body.timeout_s)
        except FutureTimeout:
            raise HTTPException(
                status_code=504,
                detail=f"reduce exceeded {body.timeout_s:.0f}s",
            ) from None
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return _plan_json(plan)

    @app.post("/sessions/{session_id}/commit")
    def commit(session_id: str, body: CommitBody) -> dict:
        session = get_session(session_id)
        with session.lock:
            edited = session.pois
            try:
                if body.moves:
                    for old, new in body.moves:
                        edited = edited.with_moved(old, new)
                edited = _apply_edit(session.net, edited, body)
            except (ValueError, KeyError) as exc:
                raise _edit_error(exc) from None
            session.pois = edited
            session.baseline = track(
                session.net, edited, session.direction, session.strict_unreachable
            )
            session.history.append(body.model_dump(exclude_none=True))
            return _report_json(session.baseline)

    return app
