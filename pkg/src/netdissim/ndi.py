"""Node dissimilarity: principal-component scores, the pairwise score-distance
matrix, and the dissimilarity index at network and node level.

Pipeline: standardize the metric table, eigendecompose its correlation
matrix, keep the components whose score variance is at least the retention
threshold (never fewer than one), and measure pairwise Euclidean distance
between nodes in the retained score coordinates. The network index is the
ratio of that distance matrix's principal eigenvalue to its average entry
level; the node index is the principal eigenvector; the elbow of the sorted
node index separates the dissimilar minority from the similar bulk.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .centrality import MetricTable, centrality_table
from .graph import Graph
from .linalg import jacobi_eigen, power_iteration_top, standardize_columns, correlation_matrix

__all__ = [
    "AveragingConvention",
    "PcaResult",
    "NetworkNdi",
    "ElbowPartition",
    "NdiReport",
    "AllColumnsDegenerateError",
    "run_pca",
    "build_ndm",
    "network_ndi",
    "node_ndi",
    "elbow_partition",
    "compute_ndi",
    "compute_ndi_from_table",
    "ndm_to_csv",
    "report_to_json",
    "report_to_node_csv",
    "round_sig",
]


class AveragingConvention(str, enum.Enum):
    """How the average entry level of the distance matrix is taken.

    ROW_MEAN divides the total entry sum by n (the mean row sum); it is the
    default because the principal eigenvalue of a symmetric nonnegative
    matrix always dominates the mean row sum, which keeps the network index
    at or above 1. The other two divide the same sum by n - 1 or by
    n * (n - 1) and are kept selectable for sensitivity comparisons.
    """

    ROW_MEAN = "row_mean"
    NONDIAG_OVER_N_MINUS_1 = "nondiag_over_n_minus_1"
    ENTRY_MEAN = "entry_mean"


class AllColumnsDegenerateError(ValueError):
    """Every metric column is constant; use the degenerate path of compute_ndi."""


@dataclass
class PcaResult:
    """Eigenstructure of the metric correlation matrix plus node scores.

    `eigenvectors` holds unit column vectors matching `eigenvalues` (both in
    descending eigenvalue order); `scores` are the standardized data
    projected on all k components; `pc_variances[j]` is the sample variance
    of score column j; `retained_m` counts the components kept.
    """

    eigenvalues: list[float]
    eigenvectors: np.ndarray
    scores: np.ndarray
    pc_variances: list[float]
    retained_m: int
    degenerate_columns: list[int]


class NetworkNdi(NamedTuple):
    ndi: float
    eigenvalue: float
    average: float
    degenerate: bool


class ElbowPartition(NamedTuple):
    elbow_index: int
    dissimilar: list[int]
    similar: list[int]
    degenerate: bool
    order: list[int]


@dataclass
class NdiReport:
    """Everything the dissimilarity pipeline produces for one network."""

    node_labels: list[str]
    metric_columns: list[str]
    metric_values: np.ndarray
    scores: np.ndarray
    pc_variances: list[float]
    retained_m: int
    network_ndi: float
    ndm_eigenvalue: float
    ndm_average: float
    convention: AveragingConvention
    retention_threshold: float
    node_ndi: np.ndarray
    rank_order: list[int]
    elbow_index: int
    dissimilar_nodes: list[str]
    similar_nodes: list[str]
    degeneracy_flags: list[str]
    m_edges: int | None = None

    @property
    def n(self) -> int:
        return len(self.node_labels)


def run_pca(
    t: MetricTable, *, retention_threshold: float = 1.0, ddof: int = 1
) -> PcaResult:
    """Principal components of the metric table via its correlation matrix.

    Standardizes columns (constant columns become zeros and are reported),
    eigendecomposes the Pearson correlation matrix with the Jacobi solver,
    and projects the standardized data onto all components. Components with
    score variance >= `retention_threshold` are retained, with a floor of
    one so the distance step always has a coordinate to work with.

    `ddof` picks the variance divisor (1 for the sample n - 1 form, 0 for
    the population n form) and is applied consistently to standardization,
    the correlation matrix, and the score variances. With a consistent
    choice the score variances equal the correlation eigenvalues, so the
    retained set and every downstream quantity are divisor-invariant; the
    knob exists to demonstrate that, not to change results.

    Eigenvectors are sign-fixed (largest-magnitude entry positive); the
    distance matrix downstream is invariant to that choice.

    Raises AllColumnsDegenerateError when no column varies at all.
    """
    std, degenerate = standardize_columns(t.values, ddof=ddof)
    if len(degenerate) == t.k:
        raise AllColumnsDegenerateError(
            "all metric columns are constant; the network has no metric "
            "variation (compute_ndi handles this as a degenerate network)"
        )
    corr = correlation_matrix(std, ddof=ddof)
    pairs = jacobi_eigen(corr)
    eigenvalues = [p.value for p in pairs]
    vectors = np.column_stack([p.vector for p in pairs])
    scores = std @ vectors
    pc_variances = [float(v) for v in scores.var(axis=0, ddof=ddof)]
    retained_m = max(1, sum(1 for v in pc_variances if v >= retention_threshold))
    return PcaResult(eigenvalues, vectors, scores, pc_variances, retained_m, degenerate)


def build_ndm(scores: np.ndarray, retained_m: int) -> np.ndarray:
    """Pairwise Euclidean distance between nodes in the retained score columns.

    Exactly symmetric with a zero diagonal by construction.
    """
    scores = np.asarray(scores, dtype=float)
    if not 1 <= retained_m <= scores.shape[1]:
        raise ValueError(
            f"retained_m={retained_m} out of range for {scores.shape[1]} columns"
        )
    coords = scores[:, :retained_m]
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def _ndm_average(ndm: np.ndarray, convention: AveragingConvention) -> float:
    n = ndm.shape[0]
    total = float(ndm.sum())  # diagonal is zero, so this is the off-diagonal sum
    if convention is AveragingConvention.ROW_MEAN:
        return total / n
    if convention is AveragingConvention.NONDIAG_OVER_N_MINUS_1:
        return total / (n - 1)
    return total / (n * (n - 1))


def network_ndi(
    ndm: np.ndarray,
    convention: AveragingConvention = AveragingConvention.ROW_MEAN,
) -> NetworkNdi:
    """Ratio of the distance matrix's principal eigenvalue to its average level.

    An all-zero matrix (all nodes at the same retained coordinates) has no
    meaningful ratio and reports 1.0 with the degenerate flag set.
    """
    ndm = np.asarray(ndm, dtype=float)
    convention = AveragingConvention(convention)
    if not ndm.any():
        return NetworkNdi(1.0, 0.0, 0.0, True)
    pair = power_iteration_top(ndm)
    average = _ndm_average(ndm, convention)
    return NetworkNdi(pair.value / average, pair.value, average, False)


def node_ndi(ndm: np.ndarray) -> np.ndarray:
    """Unit-L2, nonnegative principal eigenvector of the distance matrix.

    The all-zero matrix yields the uniform vector.
    """
    return power_iteration_top(np.asarray(ndm, dtype=float)).vector


def elbow_partition(values: np.ndarray, *, flat_tol: float = 1e-12) -> ElbowPartition:
    """Split nodes into a dissimilar head and similar tail of the sorted curve.

    Values are sorted descending (ties by node index). The elbow is the
    interior rank that falls farthest below the chord from the first to the
    last point; ranks strictly before the elbow are dissimilar. The vertical
    drop is used directly: perpendicular distance to the chord is the same
    quantity scaled by a positive constant, so the argmax is identical.

    A curve whose values are all within `flat_tol` of each other has no
    elbow: everything is similar and the degenerate flag is set.
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    if n < 3:
        raise ValueError(f"need at least 3 values to find an elbow, got {n}")
    order = np.lexsort((np.arange(n), -values))
    v = values[order]
    if float(v[0] - v[-1]) < flat_tol:
        return ElbowPartition(0, [], [int(i) for i in order], True, [int(i) for i in order])

    slope = (v[-1] - v[0]) / (n - 1)
    ranks = np.arange(1, n - 1)
    chord = v[0] + slope * ranks
    drops = chord - v[1:-1]
    elbow = 1 + int(np.argmax(drops))  # first maximum wins ties
    dissimilar = [int(i) for i in order[:elbow]]
    similar = [int(i) for i in order[elbow:]]
    return ElbowPartition(elbow, dissimilar, similar, False, [int(i) for i in order])


def _degenerate_report(
    t: MetricTable,
    convention: AveragingConvention,
    retention_threshold: float,
    m_edges: int | None,
) -> NdiReport:
    n = t.n
    uniform = np.full(n, 1.0 / math.sqrt(n))
    return NdiReport(
        node_labels=list(t.node_labels),
        metric_columns=list(t.column_names),
        metric_values=t.values.copy(),
        scores=np.zeros((n, 0)),
        pc_variances=[0.0] * t.k,
        retained_m=0,
        network_ndi=1.0,
        ndm_eigenvalue=0.0,
        ndm_average=0.0,
        convention=convention,
        retention_threshold=retention_threshold,
        node_ndi=uniform,
        rank_order=list(range(n)),
        elbow_index=0,
        dissimilar_nodes=[],
        similar_nodes=list(t.node_labels),
        degeneracy_flags=["all_metric_columns_constant"],
        m_edges=m_edges,
    )


def compute_ndi_from_table(
    t: MetricTable,
    *,
    convention: AveragingConvention = AveragingConvention.ROW_MEAN,
    retention_threshold: float = 1.0,
    ddof: int = 1,
    m_edges: int | None = None,
) -> NdiReport:
    """Run the dissimilarity pipeline on an existing metric table.

    Fully constant tables short-circuit to the degenerate report: index 1.0,
    uniform node vector, no dissimilar nodes. Partial degeneracies are
    recorded in `degeneracy_flags` and the pipeline proceeds on the
    remaining variation.
    """
    convention = AveragingConvention(convention)
    try:
        pca = run_pca(t, retention_threshold=retention_threshold, ddof=ddof)
    except AllColumnsDegenerateError:
        return _degenerate_report(t, convention, retention_threshold, m_edges)

    flags = [
        f"constant_metric_column:{t.column_names[j]}" for j in pca.degenerate_columns
    ]
    ndm = build_ndm(pca.scores, pca.retained_m)
    net = network_ndi(ndm, convention)
    vector = node_ndi(ndm)
    if net.degenerate:
        flags.append("zero_dissimilarity_matrix")
    partition = elbow_partition(vector)
    if partition.degenerate:
        flags.append("uniform_node_ndi")

    return NdiReport(
        node_labels=list(t.node_labels),
        metric_columns=list(t.column_names),
        metric_values=t.values.copy(),
        scores=pca.scores[:, : pca.retained_m].copy(),
        pc_variances=pca.pc_variances,
        retained_m=pca.retained_m,
        network_ndi=net.ndi,
        ndm_eigenvalue=net.eigenvalue,
        ndm_average=net.average,
        convention=convention,
        retention_threshold=retention_threshold,
        node_ndi=vector,
        rank_order=partition.order,
        elbow_index=partition.elbow_index,
        dissimilar_nodes=[t.node_labels[i] for i in partition.dissimilar],
        similar_nodes=[t.node_labels[i] for i in partition.similar],
        degeneracy_flags=flags,
        m_edges=m_edges,
    )


def compute_ndi(
    g: Graph,
    *,
    convention: AveragingConvention = AveragingConvention.ROW_MEAN,
    retention_threshold: float = 1.0,
    ddof: int = 1,
) -> NdiReport:
    """Metric table plus dissimilarity pipeline for a connected graph."""
    t = centrality_table(g)
    return compute_ndi_from_table(
        t,
        convention=convention,
        retention_threshold=retention_threshold,
        ddof=ddof,
        m_edges=g.m_edges,
    )


def round_sig(x: float, precision: int) -> float:
    """Round to `precision` significant digits (returns a float)."""
    return float(f"{x:.{precision}g}")


def ndm_to_csv(ndm: np.ndarray, *, precision: int = 6) -> str:
    """Distance matrix as bare CSV rows in node index order."""
    ndm = np.asarray(ndm, dtype=float)
    lines = [
        ",".join(f"{x:.{precision}g}" for x in row) for row in ndm
    ]
    return "\n".join(lines) + "\n"


def _node_rows(report: NdiReport, precision: int) -> list[dict]:
    ranks = {node: rank for rank, node in enumerate(report.rank_order)}
    rows = []
    for i, label in enumerate(report.node_labels):
        row: dict = {"label": label}
        for j, name in enumerate(report.metric_columns):
            row[name.lower()] = round_sig(float(report.metric_values[i, j]), precision)
        row["scores"] = [round_sig(float(x), precision) for x in report.scores[i]]
        row["node_ndi"] = round_sig(float(report.node_ndi[i]), precision)
        row["rank"] = ranks[i]
        row["category"] = "dissimilar" if ranks[i] < report.elbow_index else "similar"
        rows.append(row)
    return rows


def report_to_json(report: NdiReport, *, precision: int = 6) -> str:
    """Serialize a report to a deterministic two-part JSON document."""
    doc = {
        "network": {
            "n": report.n,
            "edges": report.m_edges,
            "ndi": round_sig(report.network_ndi, precision),
            "ndm_eigenvalue": round_sig(report.ndm_eigenvalue, precision),
            "ndm_average": round_sig(report.ndm_average, precision),
            "convention": report.convention.value,
            "retained_m": report.retained_m,
            "pc_variances": [round_sig(v, precision) for v in report.pc_variances],
            "degeneracy_flags": list(report.degeneracy_flags),
        },
        "nodes": _node_rows(report, precision),
    }
    return json.dumps(doc, indent=2) + "\n"


def report_to_node_csv(report: NdiReport, *, precision: int = 6) -> str:
    """Per-node CSV: metric columns plus node_ndi, rank, and category."""
    ranks = {node: rank for rank, node in enumerate(report.rank_order)}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["node"]
        + [name.lower() for name in report.metric_columns]
        + ["node_ndi", "rank", "category"]
    )
    for i, label in enumerate(report.node_labels):
        writer.writerow(
            [label]
            + [f"{x:.{precision}g}" for x in report.metric_values[i]]
            + [
                f"{report.node_ndi[i]:.{precision}g}",
                ranks[i],
                "dissimilar" if ranks[i] < report.elbow_index else "similar",
            ]
        )
    return buf.getvalue()
