"""Node-level centrality metrics and the per-node metric table.

All four metrics assume a connected graph. Betweenness follows the
dependency-accumulation scheme over BFS shortest-path DAGs; it counts
unordered pairs and excludes endpoints, and is left unnormalized.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import DisconnectedGraphError, Graph, adjacency_matrix, connected_components
from .linalg import power_iteration_top

__all__ = [
    "MetricTable",
    "METRIC_COLUMNS",
    "degree_centrality",
    "eigenvector_centrality",
    "betweenness_centrality",
    "closeness_centrality",
    "centrality_table",
    "metric_table_to_csv",
]

METRIC_COLUMNS = ("DEG", "EVC", "BWC", "CLC")


@dataclass
class MetricTable:
    """An n-by-k table of node metric values, one row per node."""

    column_names: list[str]
    values: np.ndarray
    node_labels: list[str]

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def k(self) -> int:
        return len(self.column_names)


def _require_connected(g: Graph, what: str) -> None:
    labeling = connected_components(g)
    if labeling.num_components != 1:
        raise DisconnectedGraphError(
            f"{what} requires a connected graph; found "
            f"{labeling.num_components} components",
            num_components=labeling.num_components,
        )


def degree_centrality(g: Graph) -> np.ndarray:
    """Neighbor count per node."""
    return np.array([float(len(nbrs)) for nbrs in g.adjacency])


def eigenvector_centrality(g: Graph) -> np.ndarray:
    """Unit-L2, nonnegative principal eigenvector of the adjacency matrix.

    Solved by shifted power iteration; the returned vector satisfies
    ||Av - lambda v||_inf < 1e-10.
    """
    _require_connected(g, "eigenvector centrality")
    pair = power_iteration_top(adjacency_matrix(g), residual_tol=1e-10)
    return pair.vector


def betweenness_centrality(g: Graph) -> np.ndarray:
    """Shortest-path betweenness over unordered pairs, endpoints excluded.

    Unnormalized: the value for v is the sum over pairs {s, t} (v not in
    {s, t}) of the fraction of s-t shortest paths passing through v.
    """
    _require_connected(g, "betweenness centrality")
    n = g.n
    bc = [0.0] * n
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1
        order: list[int] = []
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.adjacency[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for u in preds[w]:
                delta[u] += sigma[u] * coeff
            if w != s:
                bc[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return np.array(bc) / 2.0


def closeness_centrality(g: Graph) -> np.ndarray:
    """Reciprocal of the total BFS distance from each node to all others."""
    _require_connected(g, "closeness centrality")
    n = g.n
    out = np.empty(n)
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        total = 0
        while queue:
            u = queue.popleft()
            total += dist[u]
            for w in g.adjacency[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        out[s] = 1.0 / total
    return out


def centrality_table(g: Graph) -> MetricTable:
    """Stack the four metrics into an n-by-4 table (DEG, EVC, BWC, CLC)."""
    _require_connected(g, "the metric table")
    values = np.column_stack(
        [
            degree_centrality(g),
            eigenvector_centrality(g),
            betweenness_centrality(g),
            closeness_centrality(g),
        ]
    )
    return MetricTable(list(METRIC_COLUMNS), values, list(g.node_labels))


def metric_table_to_csv(t: MetricTable, *, precision: int = 6) -> str:
    """Render a metric table as CSV: header ``node,deg,evc,bwc,clc``.

    Labels containing commas are quoted; floats use `precision` significant
    digits.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["node"] + [name.lower() for name in t.column_names])
    for i, label in enumerate(t.node_labels):
        writer.writerow([label] + [f"{x:.{precision}g}" for x in t.values[i]])
    return buf.getvalue()
