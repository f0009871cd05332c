"""Node similarity via the unit-disk connectivity threshold.

Nodes are placed in the unit k-cube by normalizing the metric table column
by column (unit-norm scaling by default, min-max as the alternative). The
minimum distance threshold at which the disk graph (edges between points at
distance <= d) becomes connected measures how spread out the nodes are; the
similarity index rescales it to [0, 1] with 1 meaning all nodes coincide.

Two engines compute the threshold: the exact one takes the largest edge of
a minimum spanning tree of the point cloud (the tree's bottleneck is the
connectivity threshold), and a binary search over d probes connectivity
directly. The binary search is kept alongside the exact engine as an
independent route; the two must agree within the search epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centrality import MetricTable, centrality_table
from .graph import Graph

__all__ = [
    "UnitDiskEmbedding",
    "NsiResult",
    "minmax_normalize",
    "unit_norm_embedding",
    "pairwise_distances",
    "min_connectivity_threshold_bsearch",
    "mst_bottleneck",
    "compute_nsi",
]

METHODS = ("mst_bottleneck", "binary_search")
NORMALIZATIONS = ("unit_norm", "minmax")


@dataclass
class UnitDiskEmbedding:
    """Node coordinates inside [0, 1]^k (for nonnegative metric columns).

    Columns that were constant in the source table carry no between-node
    signal and are listed in `degenerate_columns`.
    """

    coords: np.ndarray
    k: int
    degenerate_columns: list[int]

    @property
    def n(self) -> int:
        return self.coords.shape[0]


@dataclass
class NsiResult:
    nsi: float
    min_threshold: float
    method: str
    normalization: str
    k: int


def minmax_normalize(t: MetricTable) -> UnitDiskEmbedding:
    """Scale each metric column onto [0, 1]; constant columns become zeros.

    Non-degenerate columns attain both 0 and 1 exactly.
    """
    values = np.asarray(t.values, dtype=float)
    lo = values.min(axis=0)
    hi = values.max(axis=0)
    span = hi - lo
    degenerate = [int(j) for j in np.flatnonzero(span == 0.0)]
    safe = np.where(span == 0.0, 1.0, span)
    coords = (values - lo) / safe
    if degenerate:
        coords[:, degenerate] = 0.0
    return UnitDiskEmbedding(coords, t.k, degenerate)


def unit_norm_embedding(t: MetricTable) -> UnitDiskEmbedding:
    """Scale each metric column by its Euclidean norm.

    Nonnegative metric columns land in [0, 1] without stretching their
    minimum to 0, so a tight cluster with one outlier stays tight. This is
    the scaling that reproduces the published similarity values of the
    classic test networks, and it is the compute_nsi default; min-max is
    kept as the alternative. Constant columns are still reported as carrying
    no signal; all-zero columns (which have no norm) map to zeros.
    """
    values = np.asarray(t.values, dtype=float)
    norms = np.sqrt((values**2).sum(axis=0))
    span = values.max(axis=0) - values.min(axis=0)
    degenerate = [int(j) for j in np.flatnonzero(span == 0.0)]
    safe = np.where(norms == 0.0, 1.0, norms)
    coords = values / safe
    return UnitDiskEmbedding(coords, t.k, degenerate)


def pairwise_distances(coords: np.ndarray) -> np.ndarray:
    """Euclidean distances between all point pairs (exactly symmetric)."""
    coords = np.asarray(coords, dtype=float)
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def _is_connected_at(dist: np.ndarray, threshold: float) -> bool:
    n = dist.shape[0]
    within = dist <= threshold
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        reachable = within[frontier].any(axis=0) & ~seen
        frontier = list(np.flatnonzero(reachable))
        seen[reachable] = True
    return bool(seen.all())


def min_connectivity_threshold_bsearch(
    e: UnitDiskEmbedding, *, epsilon: float = 1e-6
) -> float:
    """Smallest disk radius connecting the embedding, by bisection on [0, sqrt(k)].

    Halts when hi - lo < epsilon and returns hi (the connected side), so the
    result is within epsilon above the exact threshold.
    """
    if e.n < 2:
        raise ValueError("need at least 2 points")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    dist = pairwise_distances(e.coords)
    lo = 0.0
    hi = math.sqrt(e.k)
    while hi - lo >= epsilon:
        mid = (lo + hi) / 2.0
        if _is_connected_at(dist, mid):
            hi = mid
        else:
            lo = mid
    return hi


def mst_bottleneck(e: UnitDiskEmbedding) -> float:
    """Largest edge of a Euclidean minimum spanning tree of the embedding.

    This equals the exact minimum connectivity threshold: the disk graph at
    any smaller d cuts the tree edge and disconnects the point cloud, and at
    d equal to the bottleneck the tree itself connects everything.
    """
    if e.n < 2:
        raise ValueError("need at least 2 points")
    dist = pairwise_distances(e.coords)
    n = e.n
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best[0] = 0.0
    bottleneck = 0.0
    for _ in range(n):
        u = int(np.argmin(np.where(in_tree, np.inf, best)))
        bottleneck = max(bottleneck, float(best[u]))
        in_tree[u] = True
        best = np.where(in_tree, best, np.minimum(best, dist[u]))
    return bottleneck


def compute_nsi(
    g: Graph,
    *,
    method: str = "mst_bottleneck",
    normalization: str = "unit_norm",
    epsilon: float = 1e-6,
) -> NsiResult:
    """Similarity index 1 - d_min / sqrt(k) for a connected graph.

    `method` selects the threshold engine: "mst_bottleneck" (exact,
    default) or "binary_search" (within `epsilon`). `normalization` selects
    the embedding: "unit_norm" (default; matches the published values for
    the classic networks) or "minmax".
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if normalization not in NORMALIZATIONS:
        raise ValueError(
            f"unknown normalization {normalization!r}; expected one of {NORMALIZATIONS}"
        )
    t = centrality_table(g)
    e = unit_norm_embedding(t) if normalization == "unit_norm" else minmax_normalize(t)
    if method == "mst_bottleneck":
        threshold = mst_bottleneck(e)
    else:
        threshold = min_connectivity_threshold_bsearch(e, epsilon=epsilon)
    nsi = 1.0 - threshold / math.sqrt(e.k)
    return NsiResult(min(1.0, max(0.0, nsi)), threshold, method, normalization, e.k)
