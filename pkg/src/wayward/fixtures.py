"""Synthetic street networks for tests, benchmarks and demos.

Grid cities with configurable one-way shares and weight modes, plus small
hand-shaped instances: a forced-detour triangle, an L-shaped street, two
case-study layouts, and a 50k-node performance city.
"""
from __future__ import annotations

import numpy as np

from .geo import TrigCache, gc_combine
from .ingest import PoiSet
from .network import Network

# southern-hemisphere city block scale: ~111 m per 0.001 degree
DEFAULT_ORIGIN = (-22.10, -47.95)
DEFAULT_SPACING = 0.001


def grid(
    rows: int,
    cols: int,
    *,
    spacing: float = DEFAULT_SPACING,
    origin: tuple[float, float] = DEFAULT_ORIGIN,
    one_way_frac: float = 0.0,
    weight_mode: str = "auto",
    seed: int = 0,
) -> Network:
    """A rows x cols lattice city.

    one_way_frac of the undirected street segments become one-way with a
    random orientation (the count is exact: round(frac * segments)).
    weight_mode "auto" derives weights from node coordinates; "integer"
    draws whole-meter weights in [80, 160], shared by both directions of a
    segment, so path sums stay exact in floating point.
    """
    if rows < 2 or cols < 2:
        raise ValueError("grid needs at least 2x2 nodes")
    rng = np.random.default_rng(seed)
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    lat = origin[0] + spacing * (np.repeat(np.arange(rows), cols).astype(np.float64))
    lon = origin[1] + spacing * (np.tile(np.arange(cols), rows).astype(np.float64))

    und_src = np.concatenate([ids[:, :-1].ravel(), ids[:-1, :].ravel()])
    und_dst = np.concatenate([ids[:, 1:].ravel(), ids[1:, :].ravel()])
    m = len(und_src)

    n_one = int(round(one_way_frac * m))
    one_mask = np.zeros(m, dtype=bool)
    one_mask[rng.permutation(m)[:n_one]] = True
    flip = rng.random(m) < 0.5

    if weight_mode == "integer":
        und_w = rng.integers(80, 161, size=m).astype(np.float64)
    elif weight_mode == "auto":
        und_w = None
    else:
        raise ValueError(f"unknown weight_mode {weight_mode!r}")

    ow_src = np.where(flip[one_mask], und_dst[one_mask], und_src[one_mask])
    ow_dst = np.where(flip[one_mask], und_src[one_mask], und_dst[one_mask])
    tw = ~one_mask
    src = np.concatenate([ow_src, und_src[tw], und_dst[tw]])
    dst = np.concatenate([ow_dst, und_dst[tw], und_src[tw]])
    if und_w is None:
        trig = TrigCache(lat, lon)
        w = gc_combine(trig.take(src), trig.take(dst))
        return Network(lat, lon, src, dst, w, trig=trig)
    w = np.concatenate([und_w[one_mask], und_w[tw], und_w[tw]])
    return Network(lat, lon, src, dst, w)


def random_pois(net: Network, k: int, seed: int = 0, prefix: str = "p") -> PoiSet:
    """k distinct random POI nodes, ascending, labeled prefix0..prefix{k-1}."""
    rng = np.random.default_rng(seed)
    nodes = np.sort(rng.choice(net.n_nodes, size=k, replace=False))
    return PoiSet(tuple(int(v) for v in nodes), tuple(f"{prefix}{i}" for i in range(k)))


def random_instance(seed: int) -> tuple[Network, PoiSet]:
    """One member of the randomized grid family used across the test suite.

    5x5 to 20x20 lattice, 10-40% one-way segments, 2-8 POIs, integer
    weights; every parameter derives from the seed.
    """
    rng = np.random.default_rng(seed)
    rows = int(rng.integers(5, 21))
    cols = int(rng.integers(5, 21))
    one_way = float(rng.uniform(0.10, 0.40))
    n_pois = int(rng.integers(2, 9))
    net = grid(
        rows,
        cols,
        one_way_frac=one_way,
        weight_mode="integer",
        seed=int(rng.integers(2**31)),
    )
    pois = random_pois(net, n_pois, seed=int(rng.integers(2**31)))
    return net, pois


def three_node_detour() -> tuple[Network, PoiSet]:
    """Two POIs and one node whose only path to its straight-line-nearest
    POI runs through the other: the smallest instance with an inward
    inconsistency (node 2 is charged to POI a) and no outward one.
    """
    lat = np.array([0.0, 0.0, 0.0])
    lon = np.array([0.0, 0.002, 0.0009])
    src = np.array([2, 1, 0, 1])
    dst = np.array([1, 0, 2, 2])
    trig = TrigCache(lat, lon)
    w = gc_combine(trig.take(src), trig.take(dst))
    net = Network(lat, lon, src, dst, w, trig=trig)
    return net, PoiSet((0, 1), ("a", "b"))


def l_shape() -> Network:
    """Five nodes along an L-shaped street, all segments bidirectional."""
    lat = np.array([0.0, 0.0, 0.0, 0.001, 0.002])
    lon = np.array([0.0, 0.001, 0.002, 0.002, 0.002])
    chain = np.array([0, 1, 2, 3, 4])
    src = np.concatenate([chain[:-1], chain[1:]])
    dst = np.concatenate([chain[1:], chain[:-1]])
    trig = TrigCache(lat, lon)
    w = gc_combine(trig.take(src), trig.take(dst))
    return Network(lat, lon, src, dst, w, trig=trig)


def grid12() -> tuple[Network, PoiSet]:
    """12x12 bidirectional grid with 4 POIs clustered in one quadrant."""
    net = grid(12, 12, weight_mode="auto")
    # bottom-left cluster: the rest of the city splits into oversized,
    # detour-prone perimeters
    pois = PoiSet((13, 27, 38, 50), ("p0", "p1", "p2", "p3"))
    return net, pois


def case_oversized(seed: int = 5) -> tuple[Network, PoiSet]:
    """Three POIs crowded into the bottom rows of a 16x16 partly one-way
    grid, leaving one oversized far perimeter to experiment in.
    """
    net = grid(16, 16, one_way_frac=0.25, weight_mode="auto", seed=seed)
    pois = PoiSet((34, 40, 45), ("west", "mid", "east"))
    return net, pois


def case_adjacent(seed: int = 5) -> tuple[Network, PoiSet]:
    """Two adjacent POIs (plus two far anchors) on a 14x14 partly one-way
    grid: the merge-two-nearby-facilities layout.
    """
    net = grid(14, 14, one_way_frac=0.25, weight_mode="auto", seed=seed)
    pois = PoiSet(
        (int(7 * 14 + 6), int(7 * 14 + 7), 15, int(12 * 14 + 11)),
        ("twin_a", "twin_b", "anchor_sw", "anchor_ne"),
    )
    return net, pois


def perf_city(n_pois: int = 16, seed: int = 20) -> tuple[Network, PoiSet]:
    """A 50,000-node / ~130,000-edge synthetic city with 16 POIs.

    200 x 250 lattice; the one-way share is tuned so the directed edge
    count lands at 2*(1-f)*m + f*m = 130,012.
    """
    net = grid(200, 250, one_way_frac=0.694, weight_mode="auto", seed=seed)
    pois = random_pois(net, n_pois, seed=seed + 1)
    return net, pois


FIXTURES = {
    "three_node": lambda seed=0: three_node_detour(),
    "l_shape": lambda seed=0: (l_shape(), None),
    "grid12": lambda seed=0: grid12(),
    "case_oversized": lambda seed=5: case_oversized(seed),
    "case_adjacent": lambda seed=5: case_adjacent(seed),
    "perf_city": lambda seed=20: perf_city(seed=seed),
}


def load_fixture(name: str, seed: int | None = None) -> tuple[Network, PoiSet | None]:
    """Instantiate a named fixture; seed falls back to the fixture default."""
    try:
        maker = FIXTURES[name]
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}"
        ) from None
    return maker() if seed is None else maker(seed)
