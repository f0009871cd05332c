"""Network-level summaries and the cross-network correlation study.

`batch_evaluate` turns a manifest of edge-list files into one summary row
per network (spectral radius ratio, dissimilarity index, similarity index).
Failures are recorded per network and the batch keeps going.
`correlation_study` fits the dissimilarity index against the other two
columns; it accepts summaries from anywhere, so a transcribed table of
published values works as input just as well as a batch run.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .graph import (
    DisconnectedGraphError,
    EdgeListParseError,
    Graph,
    adjacency_matrix,
    connected_components,
    extract_largest_component,
    parse_edge_list,
)
from .linalg import ConvergenceError, LinearFit, linear_fit, power_iteration_top
from .ndi import AveragingConvention, compute_ndi
from .nsi import compute_nsi

__all__ = [
    "NetworkSummary",
    "BatchFailure",
    "CorrelationStudy",
    "spectral_radius_ratio",
    "batch_evaluate",
    "correlation_study",
    "read_manifest",
    "read_summaries_csv",
    "summaries_to_csv",
]

SUMMARY_COLUMNS = ("name", "nodes", "edges", "lambda_sp", "ndi", "nsi")


@dataclass
class NetworkSummary:
    """One row of the cross-network comparison table."""

    name: str
    n: int
    edges: int
    lambda_sp: float
    ndi: float
    nsi: float


@dataclass
class BatchFailure:
    """A network that could not be evaluated, with the reason."""

    name: str
    path: str
    error: str


@dataclass
class CorrelationStudy:
    """Least-squares fits of the dissimilarity index against other columns.

    `fits` maps predictor name -> LinearFit (response is always `ndi`);
    predictors that were constant are listed in `skipped` with a reason.
    """

    fits: dict[str, LinearFit]
    skipped: list[tuple[str, str]]


def spectral_radius_ratio(g: Graph) -> float:
    """Adjacency spectral radius divided by the mean degree.

    At least 1 for any connected graph, with equality exactly on regular
    graphs.
    """
    pair = power_iteration_top(adjacency_matrix(g))
    mean_degree = 2.0 * g.m_edges / g.n
    return pair.value / mean_degree


def batch_evaluate(
    manifest: list[tuple[str, str]],
    *,
    use_lcc: bool = False,
    convention: AveragingConvention = AveragingConvention.ROW_MEAN,
    retention_threshold: float = 1.0,
    epsilon: float = 1e-6,
) -> list[NetworkSummary | BatchFailure]:
    """Evaluate every (name, path) entry, preserving manifest order.

    Each file is parsed, optionally restricted to its largest connected
    component, and summarized. Any per-network failure (unreadable file,
    parse error, disconnected graph without `use_lcc`, solver breakdown)
    becomes a BatchFailure entry; the batch always completes.
    """
    results: list[NetworkSummary | BatchFailure] = []
    for name, path in manifest:
        try:
            text = Path(path).read_text()
            g = parse_edge_list(text)
            if use_lcc:
                g = extract_largest_component(g)
            else:
                labeling = connected_components(g)
                if labeling.num_components != 1:
                    raise DisconnectedGraphError(
                        f"graph has {labeling.num_components} components "
                        "(largest-component mode not enabled)",
                        num_components=labeling.num_components,
                    )
            report = compute_ndi(
                g, convention=convention, retention_threshold=retention_threshold
            )
            similarity = compute_nsi(g, epsilon=epsilon)
            results.append(
                NetworkSummary(
                    name=name,
                    n=g.n,
                    edges=g.m_edges,
                    lambda_sp=spectral_radius_ratio(g),
                    ndi=report.network_ndi,
                    nsi=similarity.nsi,
                )
            )
        except (OSError, ValueError, ConvergenceError) as exc:
            results.append(BatchFailure(name, str(path), str(exc)))
    return results


def correlation_study(summaries: list[NetworkSummary]) -> CorrelationStudy:
    """Fit ndi against lambda_sp and against nsi across networks."""
    if len(summaries) < 3:
        raise ValueError(f"need at least 3 summaries, got {len(summaries)}")
    y = [s.ndi for s in summaries]
    fits: dict[str, LinearFit] = {}
    skipped: list[tuple[str, str]] = []
    for predictor in ("lambda_sp", "nsi"):
        x = [getattr(s, predictor) for s in summaries]
        try:
            fits[predictor] = linear_fit(x, y)
        except ValueError as exc:
            skipped.append((predictor, str(exc)))
    return CorrelationStudy(fits, skipped)


def read_manifest(path: str | Path) -> list[tuple[str, str]]:
    """Read a ``name,path`` manifest CSV.

    Relative dataset paths are resolved against the manifest's directory.
    """
    path = Path(path)
    base = path.parent
    entries: list[tuple[str, str]] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["name", "path"]:
            raise ValueError(f"{path}: expected a CSV with header name,path")
        for row in reader:
            if not row or not "".join(row).strip():
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: manifest row {row!r} is missing a path")
            name, raw = row[0].strip(), row[1].strip()
            entries.append((name, str((base / raw) if not Path(raw).is_absolute() else Path(raw))))
    return entries


def read_summaries_csv(path: str | Path) -> list[NetworkSummary]:
    """Read summary rows from a ``name,nodes,edges,lambda_sp,ndi,nsi`` CSV."""
    path = Path(path)
    out: list[NetworkSummary] = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(SUMMARY_COLUMNS) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for row in reader:
            out.append(
                NetworkSummary(
                    name=row["name"],
                    n=int(row["nodes"]),
                    edges=int(row["edges"]),
                    lambda_sp=float(row["lambda_sp"]),
                    ndi=float(row["ndi"]),
                    nsi=float(row["nsi"]),
                )
            )
    return out


def summaries_to_csv(
    entries: list[NetworkSummary | BatchFailure], *, precision: int = 6
) -> str:
    """Summary rows as CSV (failures are skipped; the caller reports them)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for entry in entries:
        if isinstance(entry, BatchFailure):
            continue
        writer.writerow(
            [
                entry.name,
                entry.n,
                entry.edges,
                f"{entry.lambda_sp:.{precision}g}",
                f"{entry.ndi:.{precision}g}",
                f"{entry.nsi:.{precision}g}",
            ]
        )
    return buf.getvalue()
