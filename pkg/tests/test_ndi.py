"""Dissimilarity pipeline: PCA, distance matrix, network/node indices, and
the elbow split. The 3-node case is checked against the cubic characteristic
polynomial solved independently by np.roots."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netdissim import (
    AllColumnsDegenerateError,
    AveragingConvention,
    compute_ndi,
    compute_ndi_from_table,
    elbow_partition,
    induced_subgraph,
)
from netdissim.centrality import MetricTable, centrality_table
from netdissim.linalg import correlation_matrix, jacobi_eigen, standardize_columns
from netdissim.ndi import (
    build_ndm,
    ndm_to_csv,
    network_ndi,
    node_ndi,
    report_to_json,
    report_to_node_csv,
    run_pca,
)

from conftest import complete_graph, cycle_graph, random_connected_gnp


def single_column_table(values: list[float]) -> MetricTable:
    labels = [f"n{i}" for i in range(len(values))]
    return MetricTable(["X"], np.array(values, dtype=float).reshape(-1, 1), labels)


# ------------------------------------------------------- 3-node exact oracle


def test_three_node_single_column_matches_cubic_roots():
    # the 3x3 distance matrix [[0,a,b],[a,0,c],[b,c,0]] has characteristic
    # polynomial x^3 - (a^2+b^2+c^2) x - 2abc, solvable without any of the
    # package's own linear algebra
    t = single_column_table([1.0, 2.0, 10.0])
    report = compute_ndi_from_table(t)

    z = (t.values[:, 0] - t.values[:, 0].mean()) / t.values[:, 0].std(ddof=1)
    a, b, c = abs(z[0] - z[1]), abs(z[0] - z[2]), abs(z[1] - z[2])
    roots = np.roots([1.0, 0.0, -(a * a + b * b + c * c), -2 * a * b * c])
    lam = float(max(roots.real))

    assert report.ndm_eigenvalue == pytest.approx(lam, abs=1e-9)
    assert report.ndm_average == pytest.approx(2 * (a + b + c) / 3, abs=1e-12)
    assert report.network_ndi == pytest.approx(lam / (2 * (a + b + c) / 3), abs=1e-9)
    # frozen: the same numbers as literals, so a regression cannot hide
    # behind a matching change in the oracle computation above
    assert report.network_ndi == pytest.approx(1.045742365575, abs=1e-9)
    np.testing.assert_allclose(
        report.node_ndi,
        [0.535126014085, 0.484025366284, 0.692357995435],
        atol=1e-9,
    )


# -------------------------------------------------------------------- elbow


def test_elbow_basic_two_outliers():
    part = elbow_partition(np.array([0.9, 0.85, 0.2, 0.19, 0.18]))
    assert part.elbow_index == 2
    assert part.dissimilar == [0, 1]
    assert part.similar == [2, 3, 4]
    assert not part.degenerate


def test_elbow_tie_takes_first_argmax():
    # drops below the chord are exactly 1.0 at ranks 1 and 2
    part = elbow_partition(np.array([6.0, 3.0, 1.0, 0.0]))
    assert part.elbow_index == 1
    assert part.dissimilar == [0]


def test_elbow_sort_breaks_ties_by_node_index():
    part = elbow_partition(np.array([5.0, 5.0, 1.0, 0.0]))
    assert part.order == [0, 1, 2, 3]
    assert part.elbow_index == 2
    assert part.dissimilar == [0, 1]


def test_elbow_flat_curve_is_degenerate():
    part = elbow_partition(np.full(5, 0.37))
    assert part.degenerate
    assert part.elbow_index == 0
    assert part.dissimilar == []
    assert part.similar == [0, 1, 2, 3, 4]
    # near-flat within the tolerance counts as flat too
    assert elbow_partition(np.array([1.0, 1.0 + 1e-13, 1.0 - 1e-13])).degenerate


def test_elbow_needs_three_values():
    with pytest.raises(ValueError):
        elbow_partition(np.array([1.0, 0.0]))


# -------------------------------------------------- degenerate whole graphs


@pytest.mark.parametrize("make,n", [(cycle_graph, 6), (complete_graph, 5)])
def test_vertex_transitive_graphs_are_fully_degenerate(make, n):
    report = compute_ndi(make(n))
    assert report.network_ndi == 1.0
    assert report.retained_m == 0
    assert report.degeneracy_flags == ["all_metric_columns_constant"]
    assert report.dissimilar_nodes == []
    assert len(report.similar_nodes) == n
    np.testing.assert_allclose(report.node_ndi, 1 / math.sqrt(n), atol=1e-12)


def test_run_pca_raises_on_constant_table():
    t = MetricTable(
        ["A", "B"], np.ones((4, 2)), ["w", "x", "y", "z"]
    )
    with pytest.raises(AllColumnsDegenerateError):
        run_pca(t)


# -------------------------------------------------------------- invariances


def test_node_permutation_only_permutes_results(rng):
    g = random_connected_gnp(rng, 12, 0.35)
    perm = list(range(g.n))
    rng.shuffle(perm)
    base = compute_ndi(g)
    permuted = compute_ndi(induced_subgraph(g, perm))

    assert permuted.network_ndi == pytest.approx(base.network_ndi, abs=1e-9)
    assert permuted.retained_m == base.retained_m
    by_label = dict(zip(base.node_labels, base.node_ndi))
    for label, value in zip(permuted.node_labels, permuted.node_ndi):
        assert value == pytest.approx(by_label[label], abs=1e-9)
    assert sorted(permuted.dissimilar_nodes) == sorted(base.dissimilar_nodes)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=0.01, max_value=100.0),
    st.floats(min_value=-100.0, max_value=100.0),
)
def test_affine_column_rescaling_is_invisible(scale, offset):
    # standardization eats any positive affine map of a metric column
    base = np.array(
        [[1.0, 4.0], [2.0, -1.0], [5.0, 0.0], [9.0, 2.0], [3.0, 7.0]]
    )
    labels = list("abcde")
    t0 = MetricTable(["P", "Q"], base, labels)
    scaled = base.copy()
    scaled[:, 0] = scaled[:, 0] * scale + offset
    t1 = MetricTable(["P", "Q"], scaled, labels)
    r0 = compute_ndi_from_table(t0)
    r1 = compute_ndi_from_table(t1)
    assert r1.network_ndi == pytest.approx(r0.network_ndi, rel=1e-9)
    np.testing.assert_allclose(r1.node_ndi, r0.node_ndi, atol=1e-9)


def test_build_ndm_ignores_score_column_signs(np_rng):
    scores = np_rng.normal(size=(7, 3))
    flipped = scores * np.array([-1.0, 1.0, -1.0])
    np.testing.assert_array_equal(build_ndm(scores, 3), build_ndm(flipped, 3))


def test_duplicate_rows_sit_at_distance_zero():
    t = MetricTable(
        ["A", "B"],
        np.array([[1.0, 2.0], [1.0, 2.0], [5.0, 1.0], [0.0, 4.0]]),
        ["a", "a2", "b", "c"],
    )
    r = compute_ndi_from_table(t)
    ndm = build_ndm(r.scores, r.retained_m)
    assert ndm[0, 1] == 0.0
    assert r.node_ndi[0] == pytest.approx(r.node_ndi[1], abs=1e-9)


# ------------------------------------------------- retention and divisors


def test_score_variances_equal_correlation_eigenvalues(karate):
    t = centrality_table(karate)
    for ddof in (1, 0):
        pca = run_pca(t, ddof=ddof)
        std, _ = standardize_columns(t.values, ddof=ddof)
        eigs = [p.value for p in jacobi_eigen(correlation_matrix(std, ddof=ddof))]
        np.testing.assert_allclose(pca.pc_variances, eigs, atol=1e-9)
        assert pca.pc_variances == sorted(pca.pc_variances, reverse=True)


def test_variance_divisor_does_not_change_the_index(rng, karate):
    for g in [karate] + [random_connected_gnp(rng, rng.randint(8, 25), 0.3) for _ in range(5)]:
        r1 = compute_ndi(g, ddof=1)
        r0 = compute_ndi(g, ddof=0)
        assert r0.network_ndi == pytest.approx(r1.network_ndi, rel=1e-9)
        assert r0.retained_m == r1.retained_m


def test_retention_floor_keeps_one_component(karate):
    report = compute_ndi(karate, retention_threshold=100.0)
    assert report.retained_m == 1
    assert report.scores.shape == (karate.n, 1)


def test_single_live_column_retains_one():
    values = np.column_stack(
        [np.array([1.0, 4.0, 2.0, 8.0]), np.full(4, 3.0), np.full(4, 1.0)]
    )
    t = MetricTable(["A", "B", "C"], values, list("wxyz"))
    r = compute_ndi_from_table(t)
    assert r.retained_m == 1
    assert "constant_metric_column:B" in r.degeneracy_flags
    assert "constant_metric_column:C" in r.degeneracy_flags


# ---------------------------------------------------- averaging conventions


def test_convention_scalings_are_exact(karate):
    base = compute_ndi(karate, convention=AveragingConvention.ROW_MEAN)
    nondiag = compute_ndi(karate, convention="nondiag_over_n_minus_1")
    entry = compute_ndi(karate, convention="entry_mean")
    n = karate.n
    # same eigenvalue, denominators total/n vs total/(n-1) vs total/(n(n-1))
    assert nondiag.network_ndi == pytest.approx(
        base.network_ndi * (n - 1) / n, rel=1e-12
    )
    assert entry.network_ndi == pytest.approx(base.network_ndi * (n - 1), rel=1e-12)


def test_convention_rejects_unknown_name(karate):
    with pytest.raises(ValueError):
        compute_ndi(karate, convention="harmonic")


# --------------------------------------------------------- frozen datasets


def test_karate_regression_values(karate):
    r = compute_ndi(karate)
    assert r.network_ndi == pytest.approx(1.196643446, abs=1e-6)
    assert r.ndm_eigenvalue == pytest.approx(74.514723274, abs=1e-4)
    assert r.ndm_average == pytest.approx(62.269779296, abs=1e-4)
    assert r.retained_m == 1
    assert r.pc_variances[0] == pytest.approx(3.517641, abs=1e-4)
    assert r.elbow_index == 5
    # the club's two leaders head the dissimilar set
    assert "0" in r.dissimilar_nodes and "33" in r.dissimilar_nodes


def test_lesmis_regression_values(lesmis):
    r = compute_ndi(lesmis)
    assert r.network_ndi == pytest.approx(1.250137404, abs=1e-6)
    assert r.retained_m == 1
    assert "Valjean" in r.dissimilar_nodes


# ------------------------------------------------------------ serialization


def test_report_json_schema_and_determinism(karate):
    r = compute_ndi(karate)
    text = report_to_json(r)
    assert text == report_to_json(r)
    assert text.endswith("\n")
    doc = json.loads(text)
    assert set(doc) == {"network", "nodes"}
    assert set(doc["network"]) == {
        "n",
        "edges",
        "ndi",
        "ndm_eigenvalue",
        "ndm_average",
        "convention",
        "retained_m",
        "pc_variances",
        "degeneracy_flags",
    }
    assert doc["network"]["n"] == karate.n
    assert doc["network"]["edges"] == karate.m_edges
    assert doc["network"]["convention"] == "row_mean"
    assert len(doc["nodes"]) == karate.n
    row = doc["nodes"][0]
    assert set(row) == {
        "label",
        "deg",
        "evc",
        "bwc",
        "clc",
        "scores",
        "node_ndi",
        "rank",
        "category",
    }
    ranks = sorted(node["rank"] for node in doc["nodes"])
    assert ranks == list(range(karate.n))
    for node in doc["nodes"]:
        want = "dissimilar" if node["rank"] < r.elbow_index else "similar"
        assert node["category"] == want


def test_report_node_csv(karate):
    r = compute_ndi(karate)
    lines = report_to_node_csv(r).splitlines()
    assert lines[0] == "node,deg,evc,bwc,clc,node_ndi,rank,category"
    assert len(lines) == karate.n + 1
    assert sum(line.endswith("dissimilar") for line in lines[1:]) == r.elbow_index


def test_ndm_csv_shape():
    t = single_column_table([1.0, 2.0, 10.0])
    r = compute_ndi_from_table(t)
    ndm = build_ndm(r.scores, r.retained_m)
    lines = ndm_to_csv(ndm).splitlines()
    assert len(lines) == 3
    assert lines[0].split(",")[0] == "0"


# ----------------------------------------------------------- small pieces


def test_network_ndi_zero_matrix_degenerate():
    res = network_ndi(np.zeros((4, 4)))
    assert res.degenerate
    assert res.ndi == 1.0


def test_node_ndi_unit_norm_nonnegative(np_rng):
    scores = np_rng.normal(size=(9, 2))
    ndm = build_ndm(scores, 2)
    v = node_ndi(ndm)
    assert float(np.linalg.norm(v)) == pytest.approx(1.0, abs=1e-9)
    assert (v >= -1e-12).all()


def test_build_ndm_validates_retained_m(np_rng):
    scores = np_rng.normal(size=(4, 2))
    with pytest.raises(ValueError):
        build_ndm(scores, 0)
    with pytest.raises(ValueError):
        build_ndm(scores, 3)
