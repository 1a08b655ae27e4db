"""Command-line entry point: ingestion -> analysis -> reports.

Subcommands: track, reduce, centrality, whatif, convert, synth, serve.
Exit codes: 0 success, 1 unreadable/malformed input, 2 invalid POIs or
invalid edit.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fixtures, reducer, report
from .centrality import straightness
from .geo import GeoPoint
from .inconsistency import parse_direction, track
from .ingest import (
    PROFILES,
    ParseError,
    PoiSet,
    largest_scc,
    parse_edge_list,
    parse_osm_xml,
    remap_pois,
    snap_pois,
    write_edge_list,
)
from .network import Network
from .partition import perimeter_partition

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_POIS = 2


class PoiError(ValueError):
    """Invalid POI configuration or edit (exit code 2)."""


def _network_args(p: argparse.ArgumentParser, require_source: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=require_source)
    group.add_argument("--net", metavar="PATH", help="NETGEO network file")
    group.add_argument("--osm", metavar="PATH", help="OpenStreetMap XML extract")
    p.add_argument(
        "--profile",
        default="default",
        choices=sorted(PROFILES),
        help="highway classes kept when parsing OSM (default: default)",
    )
    p.add_argument(
        "--largest-scc",
        action="store_true",
        help="restrict to the largest strongly connected component",
    )
    p.add_argument(
        "--pois",
        metavar="PATH",
        help="coordinate file (lat lon label per line) snapped to nearest nodes",
    )


def _analysis_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--direction",
        required=True,
        help="inward, outward or absolute (I/O/A)",
    )
    p.add_argument(
        "--strict-unreachable",
        action="store_true",
        help="count nodes that cannot reach any POI as inconsistent",
    )
    p.add_argument("--geojson", metavar="PATH", help="write map layers as GeoJSON")
    p.add_argument("--figure", metavar="PATH", help="render a map figure (png/svg)")


def _parse_poi_file(path: str) -> list[tuple[GeoPoint, str]]:
    coords = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 3:
                raise ParseError("expected: <lat> <lon> <label>", line_no)
            try:
                lat, lon = float(parts[0]), float(parts[1])
                point = GeoPoint(lat, lon)
            except ValueError as exc:
                raise ParseError(str(exc), line_no) from None
            coords.append((point, parts[2]))
    if not coords:
        raise ParseError(f"no POI coordinates in {path}")
    return coords


def _load(args: argparse.Namespace) -> tuple[Network, PoiSet | None]:
    if args.net:
        with open(args.net, encoding="utf-8") as fh:
            net, pois = parse_edge_list(fh)
    else:
        with open(args.osm, encoding="utf-8") as fh:
            net = parse_osm_xml(fh, PROFILES[args.profile])
        pois = None
    if args.largest_scc:
        net, kept = largest_scc(net)
        if pois is not None:
            try:
                pois = remap_pois(pois, kept)
            except ValueError as exc:
                raise PoiError(str(exc)) from None
    if args.pois:
        coords = _parse_poi_file(args.pois)
        try:
            pois = snap_pois(net, coords)
        except ValueError as exc:
            raise PoiError(str(exc)) from None
    return net, pois


def _require_pois(pois: PoiSet | None) -> PoiSet:
    if pois is None:
        raise PoiError("no POIs given: add P lines to the NETGEO file or pass --pois")
    return pois


def _write_geojson(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def cmd_track(args: argparse.Namespace) -> int:
    net, pois = _load(args)
    pois = _require_pois(pois)
    c = parse_direction(args.direction)
    rep = track(net, pois, c, args.strict_unreachable)
    print(report.render_table(rep))
    if args.geojson:
        _write_geojson(
            args.geojson, report.export_geojson(net, report=rep, pois=pois)
        )
    if args.figure:
        from .figures import render_figure

        render_figure(net, args.figure, report=rep, pois=pois)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    net, pois = _load(args)
    pois = _require_pois(pois)
    c = parse_direction(args.direction)
    plan = reducer.reduce(net, pois, c, args.strict_unreachable)
    before = track(net, pois, c, args.strict_unreachable)
    after = track(net, plan.final_pois, c, args.strict_unreachable)
    print(report.render_plan(plan, pois))
    print()
    print(report.render_comparison(before, after))
    if args.geojson:
        _write_geojson(
            args.geojson,
            report.export_geojson(net, report=after, pois=plan.final_pois, plan=plan),
        )
    if args.figure:
        from .figures import render_figure

        render_figure(net, args.figure, report=after, pois=plan.final_pois, plan=plan)
    return EXIT_OK


def cmd_centrality(args: argparse.Namespace) -> int:
    net, pois = _load(args)
    c = parse_direction(args.direction)
    if args.poi is not None:
        pois = _require_pois(pois)
        try:
            idx = pois.labels.index(args.poi)
        except ValueError:
            raise PoiError(f"no POI labeled {args.poi!r}") from None
        peri = perimeter_partition(net, pois)
        members = peri.members_of(pois.nodes[idx])
    else:
        members = np.arange(net.n_nodes)
    field = straightness(net, members, c)
    print("node\tstraightness")
    for node, score in zip(field.members, field.scores):
        print(f"{int(node)}\t{score:.6f}")
    if args.geojson:
        _write_geojson(
            args.geojson, report.export_geojson(net, centrality=field, pois=pois)
        )
    if args.figure:
        from .figures import render_figure

        render_figure(net, args.figure, centrality=field, pois=pois)
    return EXIT_OK


def cmd_whatif(args: argparse.Namespace) -> int:
    net, pois = _load(args)
    pois = _require_pois(pois)
    c = parse_direction(args.direction)
    baseline = track(net, pois, c, args.strict_unreachable)
    try:
        edited = reducer.what_if(
            net,
            pois,
            c,
            add=args.add,
            remove=args.remove,
            move=tuple(args.move) if args.move else None,
            strict_unreachable=args.strict_unreachable,
        )
    except (ValueError, KeyError) as exc:
        raise PoiError(str(exc)) from None
    print(report.render_table(edited))
    print()
    print(f"baseline total: {baseline.total}")
    print(f"edited total:   {edited.total} ({edited.total - baseline.total:+d})")
    if args.geojson:
        _write_geojson(
            args.geojson, report.export_geojson(net, report=edited, pois=edited.pois)
        )
    if args.figure:
        from .figures import render_figure

        render_figure(net, args.figure, report=edited, pois=edited.pois)
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    net, pois = _load(args)
    text = write_edge_list(net, pois)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        net, pois = fixtures.load_fixture(args.fixture, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = write_edge_list(net, pois)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wayward",
        description=(
            "Detect and reduce distance-based inconsistencies in city street "
            "networks: nodes whose straight-line-nearest point of interest "
            "differs from their street-path-nearest one."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("track", help="classify inconsistent nodes per POI")
    _network_args(p)
    _analysis_args(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("reduce", help="greedy POI relocation lowering the total")
    _network_args(p)
    _analysis_args(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("centrality", help="straightness scores per node")
    _network_args(p)
    _analysis_args(p)
    p.add_argument("--poi", metavar="LABEL", help="score that POI's perimeter only")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("whatif", help="track a hypothetical POI edit")
    _network_args(p)
    _analysis_args(p)
    p.add_argument("--add", type=int, metavar="NODE")
    p.add_argument("--remove", type=int, metavar="NODE")
    p.add_argument("--move", type=int, nargs=2, metavar=("OLD", "NEW"))
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("convert", help="re-serialize a network as NETGEO text")
    _network_args(p)
    p.add_argument("--out", metavar="PATH", help="output path (default: stdout)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("synth", help="generate a synthetic fixture as NETGEO text")
    p.add_argument("--fixture", required=True, choices=sorted(fixtures.FIXTURES))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", metavar="PATH", help="output path (default: stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8977)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PoiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POIS
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POIS


if __name__ == "__main__":
    sys.exit(main())
