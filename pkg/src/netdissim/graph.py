"""Simple undirected graphs with string node labels.

Graphs are built from whitespace-separated edge lists. Parsing collapses
duplicate and reversed-duplicate edges, drops self-loops, and keeps node
labels in first-seen order so that results are reproducible run to run.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "ComponentLabeling",
    "EdgeListParseError",
    "EdgeListWarning",
    "DisconnectedGraphError",
    "parse_edge_list",
    "edge_list_text",
    "connected_components",
    "induced_subgraph",
    "extract_largest_component",
    "adjacency_matrix",
]

COMMENT_PREFIXES = ("#", "%")


class EdgeListParseError(ValueError):
    """Malformed or empty edge-list input."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DisconnectedGraphError(ValueError):
    """An operation that needs a connected graph was given a disconnected one."""

    def __init__(self, message: str, num_components: int | None = None):
        super().__init__(message)
        self.num_components = num_components


class EdgeListWarning(UserWarning):
    """Non-fatal cleanup during parsing (duplicates collapsed, self-loops dropped)."""


@dataclass
class Graph:
    """Simple undirected graph, immutable by convention after construction.

    `node_labels[i]` is the label of node i (first-seen order from the edge
    list). `adjacency[i]` is the sorted list of neighbor indices of node i.
    No self-loops, no parallel edges.
    """

    node_labels: list[str]
    adjacency: list[list[int]]

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def m_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


@dataclass
class ComponentLabeling:
    """Connected-component assignment for one graph.

    `component_id[i]` numbers components in order of discovery (scanning
    nodes by index), so component 0 contains node 0.
    """

    component_id: list[int]
    num_components: int
    largest_component_nodes: list[int]


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated edge-list text into a Graph.

    Each non-blank line is ``label_u label_v`` (extra tokens such as weights
    are ignored). Lines starting with '#' or '%' are comments. Labels map to
    dense indices in first-seen order, scanning each line left to right.

    Duplicate edges (either orientation) are collapsed and self-loops are
    dropped; both are reported through a single EdgeListWarning per kind.
    A line with exactly one token or an input with zero surviving edges
    raises EdgeListParseError.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    neighbor_sets: list[set[int]] = []
    duplicates = 0
    self_loops = 0

    def node_id(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
            neighbor_sets.append(set())
        return index[label]

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) == 1:
            raise EdgeListParseError(
                f"expected two node labels, found only {tokens[0]!r}", line_number
            )
        u = node_id(tokens[0])
        v = node_id(tokens[1])
        if u == v:
            self_loops += 1
            continue
        if v in neighbor_sets[u]:
            duplicates += 1
            continue
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)

    if not any(neighbor_sets):
        raise EdgeListParseError("edge list contains no edges")
    if duplicates:
        warnings.warn(
            f"collapsed {duplicates} duplicate edge(s)", EdgeListWarning, stacklevel=2
        )
    if self_loops:
        warnings.warn(
            f"dropped {self_loops} self-loop(s)", EdgeListWarning, stacklevel=2
        )
    return Graph(labels, [sorted(s) for s in neighbor_sets])


def edge_list_text(g: Graph) -> str:
    """Serialize a Graph back to edge-list text (one ``u v`` line per edge)."""
    lines = []
    for u in range(g.n):
        for v in g.adjacency[u]:
            if v > u:
                lines.append(f"{g.node_labels[u]} {g.node_labels[v]}")
    return "\n".join(lines) + "\n"


def connected_components(g: Graph) -> ComponentLabeling:
    """Label connected components by BFS.

    Components are numbered in order of discovery. The largest component is
    reported as a sorted node-index list; size ties go to the component with
    the smallest minimum node index (the one discovered first).
    """
    comp = [-1] * g.n
    num = 0
    for start in range(g.n):
        if comp[start] != -1:
            continue
        comp[start] = num
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if comp[v] == -1:
                    comp[v] = num
                    queue.append(v)
        num += 1

    sizes = [0] * num
    for c in comp:
        sizes[c] += 1
    largest = max(range(num), key=lambda c: sizes[c])
    largest_nodes = [i for i in range(g.n) if comp[i] == largest]
    return ComponentLabeling(comp, num, largest_nodes)


def induced_subgraph(g: Graph, nodes: list[int]) -> Graph:
    """Subgraph induced by `nodes`, relabeled to dense indices in given order.

    Node labels carry over. Raises ValueError on out-of-range or duplicate
    indices.
    """
    remap: dict[int, int] = {}
    for new, old in enumerate(nodes):
        if not 0 <= old < g.n:
            raise ValueError(f"node index {old} out of range for graph with n={g.n}")
        if old in remap:
            raise ValueError(f"duplicate node index {old} in subgraph selection")
        remap[old] = new
    labels = [g.node_labels[old] for old in nodes]
    adjacency = [
        sorted(remap[v] for v in g.adjacency[old] if v in remap) for old in nodes
    ]
    return Graph(labels, adjacency)


def extract_largest_component(g: Graph) -> Graph:
    """Restrict `g` to its largest connected component."""
    labeling = connected_components(g)
    return induced_subgraph(g, labeling.largest_component_nodes)


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense symmetric 0/1 adjacency matrix of `g`."""
    a = np.zeros((g.n, g.n))
    for u, nbrs in enumerate(g.adjacency):
        a[u, nbrs] = 1.0
    return a
