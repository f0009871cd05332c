"""Shared fixtures: bundled edge lists, expected reference values, and small
random-graph generators used by the property tests."""

from __future__ import annotations

import csv
import random
from pathlib import Path

import numpy as np
import pytest

from netdissim import Graph, parse_edge_list

DATA = Path(__file__).parent / "data"

# Classic test networks. karate and lesmis ship with the repo; dolphins and
# football are distributed elsewhere and must be dropped into tests/data/
# by hand (see README "Reference datasets"), so tests that need them skip
# when the files are missing.
DATASET_FILES = {
    "karate": "karate.edges",
    "lesmis": "lesmis.edges",
    "dolphins": "dolphins.edges",
    "football": "football.edges",
}

# Map dataset key -> row name in reference_summaries.csv.
REFERENCE_NAMES = {
    "karate": "Karate",
    "lesmis": "Les Miserables",
    "dolphins": "Dolphin",
    "football": "US Football",
}


def load_dataset(name: str) -> Graph:
    """Load a bundled dataset, skipping the caller if the file is absent."""
    path = DATA / DATASET_FILES[name]
    if not path.exists():
        ref = reference_values()[name]
        pytest.skip(
            f"{path.name} not bundled (user-supplied dataset, expected "
            f"{ref['nodes']} nodes / {ref['edges']} edges; see README)"
        )
    return parse_edge_list(path.read_text())


def reference_values() -> dict[str, dict[str, float]]:
    """Expected (nodes, edges, lambda_sp, ndi, nsi) per dataset key."""
    rows: dict[str, dict[str, float]] = {}
    with (DATA / "reference_summaries.csv").open(newline="") as fh:
        for row in csv.DictReader(fh):
            rows[row["name"]] = {
                "nodes": int(row["nodes"]),
                "edges": int(row["edges"]),
                "lambda_sp": float(row["lambda_sp"]),
                "ndi": float(row["ndi"]),
                "nsi": float(row["nsi"]),
            }
    return {key: rows[name] for key, name in REFERENCE_NAMES.items()}


def graph_from_edges(edges: list[tuple[int, int]]) -> Graph:
    text = "\n".join(f"{u} {v}" for u, v in edges) + "\n"
    return parse_edge_list(text)


def path_graph(n: int) -> Graph:
    return graph_from_edges([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return graph_from_edges([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """Hub 0 plus n - 1 leaves."""
    return graph_from_edges([(0, i) for i in range(1, n)])


def random_connected_gnp(rng: random.Random, n: int, p: float) -> Graph:
    """Erdos-Renyi G(n, p), resampled until connected."""
    for _ in range(1000):
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < p
        ]
        if len(edges) < n - 1:
            continue
        g = graph_from_edges(edges)
        if g.n == n and _connected(g):
            return g
    raise RuntimeError(f"no connected G({n}, {p}) in 1000 draws")


def random_attachment_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Preferential attachment: each new node links to m distinct earlier
    nodes drawn with probability proportional to current degree."""
    if n <= m:
        raise ValueError("need n > m")
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    # repeated endpoints implement the degree-proportional draw
    pool = [u for e in edges for u in e]
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(rng.choice(pool))
        for u in sorted(targets):
            edges.append((u, v))
            pool.extend((u, v))
    return graph_from_edges(edges)


def _connected(g: Graph) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


@pytest.fixture(scope="session")
def karate() -> Graph:
    return load_dataset("karate")


@pytest.fixture(scope="session")
def lesmis() -> Graph:
    return load_dataset("lesmis")


@pytest.fixture(scope="session")
def toy_three_extremes() -> Graph:
    return parse_edge_list((DATA / "toy_three_extremes.edges").read_text())


@pytest.fixture(scope="session")
def reference() -> dict[str, dict[str, float]]:
    return reference_values()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(0x5EED)
