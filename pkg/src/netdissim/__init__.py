"""Graph analytics around node dissimilarity.

The package measures how far a network's nodes spread across a suite of
centrality metrics: a principal-component distance matrix yields the
network- and node-level dissimilarity index, a unit-disk connectivity
threshold yields the complementary similarity index, and batch helpers fit
the two against the adjacency spectral radius across many networks.
"""

from .analysis import (
    BatchFailure,
    CorrelationStudy,
    NetworkSummary,
    batch_evaluate,
    correlation_study,
    read_manifest,
    read_summaries_csv,
    spectral_radius_ratio,
    summaries_to_csv,
)
from .centrality import (
    METRIC_COLUMNS,
    MetricTable,
    betweenness_centrality,
    centrality_table,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    metric_table_to_csv,
)
from .graph import (
    ComponentLabeling,
    DisconnectedGraphError,
    EdgeListParseError,
    EdgeListWarning,
    Graph,
    adjacency_matrix,
    connected_components,
    edge_list_text,
    extract_largest_component,
    induced_subgraph,
    parse_edge_list,
)
from .linalg import (
    ConvergenceError,
    EigenPair,
    LinearFit,
    correlation_matrix,
    euclidean_distance,
    jacobi_eigen,
    linear_fit,
    power_iteration_top,
    standardize_columns,
)
from .ndi import (
    AllColumnsDegenerateError,
    AveragingConvention,
    ElbowPartition,
    NdiReport,
    NetworkNdi,
    PcaResult,
    build_ndm,
    compute_ndi,
    compute_ndi_from_table,
    elbow_partition,
    ndm_to_csv,
    network_ndi,
    node_ndi,
    report_to_json,
    report_to_node_csv,
    run_pca,
)
from .nsi import (
    NsiResult,
    UnitDiskEmbedding,
    compute_nsi,
    min_connectivity_threshold_bsearch,
    minmax_normalize,
    mst_bottleneck,
    pairwise_distances,
    unit_norm_embedding,
)
from .svg import render_fit_scatter_svg, render_sorted_ndi_svg

__version__ = "0.1.0"

__all__ = [
    "AllColumnsDegenerateError",
    "AveragingConvention",
    "BatchFailure",
    "ComponentLabeling",
    "ConvergenceError",
    "CorrelationStudy",
    "DisconnectedGraphError",
    "EdgeListParseError",
    "EdgeListWarning",
    "EigenPair",
    "ElbowPartition",
    "Graph",
    "LinearFit",
    "METRIC_COLUMNS",
    "MetricTable",
    "NdiReport",
    "NetworkNdi",
    "NetworkSummary",
    "NsiResult",
    "PcaResult",
    "UnitDiskEmbedding",
    "adjacency_matrix",
    "batch_evaluate",
    "betweenness_centrality",
    "build_ndm",
    "centrality_table",
    "closeness_centrality",
    "compute_ndi",
    "compute_ndi_from_table",
    "compute_nsi",
    "connected_components",
    "correlation_matrix",
    "correlation_study",
    "degree_centrality",
    "edge_list_text",
    "eigenvector_centrality",
    "elbow_partition",
    "euclidean_distance",
    "extract_largest_component",
    "induced_subgraph",
    "jacobi_eigen",
    "linear_fit",
    "metric_table_to_csv",
    "min_connectivity_threshold_bsearch",
    "minmax_normalize",
    "mst_bottleneck",
    "ndm_to_csv",
    "network_ndi",
    "node_ndi",
    "pairwise_distances",
    "parse_edge_list",
    "power_iteration_top",
    "read_manifest",
    "read_summaries_csv",
    "render_fit_scatter_svg",
    "render_sorted_ndi_svg",
    "report_to_json",
    "report_to_node_csv",
    "run_pca",
    "spectral_radius_ratio",
    "standardize_columns",
    "summaries_to_csv",
    "unit_norm_embedding",
]
