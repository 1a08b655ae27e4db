from __future__ import annotations

import pathlib

import pytest

from wayward.fixtures import random_instance
from wayward.paths import warm_up

DATA = pathlib.Path(__file__).parent / "data"

N_INSTANCES = 200


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    # Compile the shortest-path kernel once so no individual test pays for it.
    warm_up()


@pytest.fixture(scope="session")
def instances():
    """The fixed family of random instances shared across suites:
    grids 5x5..20x20, 10-40% one-way edges, 2-8 POIs, seeds 0..199."""
    return [(seed, *random_instance(seed)) for seed in range(N_INSTANCES)]


@pytest.fixture(scope="session")
def small_instances(instances):
    """The instances small enough for exhaustive all-pairs oracles."""
    return [(s, n, p) for s, n, p in instances if n.n_nodes <= 64]


@pytest.fixture()
def data_dir() -> pathlib.Path:
    return DATA
