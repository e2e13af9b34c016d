"""Distance graphs, median filtering, adjacency matrices."""

from __future__ import annotations

import numpy as np
import pytest

from oracles import euclidean_matrix_naive
from texnet.errors import ConfigError, DataError
from texnet.network import (
    DistanceGraph,
    FeatureVector,
    adjacency_matrix,
    lower_median,
    median_filter,
    pairwise_distances,
)


def vectors_from(rows, label=1, ids=None):
    ids = ids if ids is not None else range(len(rows))
    return [
        FeatureVector(values=np.asarray(row, dtype=np.float64), label=label, sample_id=i)
        for row, i in zip(rows, ids)
    ]


def triangle_graph():
    # 1-D points 0, 1, 3 give pairwise distances 1, 2, 3.
    return pairwise_distances(vectors_from([[0.0], [1.0], [3.0]]))


class TestLowerMedian:
    def test_odd(self):
        assert lower_median(np.array([3.0, 1.0, 2.0])) == 2.0

    def test_even_takes_lower(self):
        assert lower_median(np.array([4.0, 1.0, 3.0, 2.0])) == 2.0

    def test_empty(self):
        with pytest.raises(DataError):
            lower_median(np.array([]))


class TestPairwiseDistances:
    def test_identical_vectors(self):
        graph = pairwise_distances(vectors_from([[1.0, 2.0], [1.0, 2.0]]))
        np.testing.assert_array_equal(graph.weights, np.zeros((2, 2)))

    def test_three_four_five(self):
        graph = pairwise_distances(vectors_from([[0.0, 0.0], [3.0, 4.0]]))
        assert graph.weights[0, 1] == 5.0

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(7)
        rows = [rng.normal(size=24) for _ in range(50)]
        graph = pairwise_distances(vectors_from(rows))
        np.testing.assert_allclose(
            graph.weights, euclidean_matrix_naive(rows), rtol=0, atol=1e-12
        )
        assert graph.edge_count() == 1225

    def test_nodes_sorted_by_sample_id(self):
        graph = pairwise_distances(vectors_from([[0.0], [1.0], [5.0]], ids=[9, 2, 4]))
        assert graph.nodes == [2, 4, 9]
        # weights follow node order: d(2,4)=4, d(2,9)=1, d(4,9)=5
        assert graph.weights[0, 1] == 4.0
        assert graph.weights[0, 2] == 1.0
        assert graph.weights[1, 2] == 5.0

    def test_metric_properties(self):
        rng = np.random.default_rng(13)
        rows = [rng.normal(size=6) for _ in range(20)]
        weights = pairwise_distances(vectors_from(rows)).weights
        np.testing.assert_array_equal(weights, weights.T)
        assert np.all(np.diag(weights) == 0.0)
        n = weights.shape[0]
        for i, j, k in rng.integers(0, n, size=(1000, 3)):
            assert weights[i, k] <= weights[i, j] + weights[j, k] + 1e-9

    def test_mixed_labels(self):
        bad = vectors_from([[0.0]], label=0) + vectors_from([[1.0]], label=1, ids=[1])
        with pytest.raises(DataError, match="mix labels"):
            pairwise_distances(bad)

    def test_mixed_dimensions(self):
        bad = vectors_from([[0.0, 1.0]]) + vectors_from([[1.0]], ids=[1])
        with pytest.raises(DataError, match="mix dimensions"):
            pairwise_distances(bad)

    def test_too_few_vectors(self):
        with pytest.raises(DataError, match="at least 2"):
            pairwise_distances(vectors_from([[0.0]]))

    def test_duplicate_ids(self):
        with pytest.raises(DataError, match="duplicate"):
            pairwise_distances(vectors_from([[0.0], [1.0]], ids=[3, 3]))

    def test_non_finite_rejected_at_vector(self):
        with pytest.raises(DataError, match="non-finite"):
            FeatureVector(values=np.array([np.nan]), label=1, sample_id=0)

    def test_bad_scaling_name(self):
        with pytest.raises(ConfigError):
            pairwise_distances(vectors_from([[0.0], [1.0]]), scaling="minmax")

    def test_zscore_standardizes_each_dimension(self):
        rows = [[0.0, 7.0], [2.0, 7.0], [4.0, 7.0]]
        graph = pairwise_distances(vectors_from(rows), scaling="zscore")
        # first dim has std sqrt(8/3); constant dim passes through untouched.
        z = np.array([0.0, 2.0, 4.0])
        z = (z - 2.0) / np.sqrt(8.0 / 3.0)
        assert graph.weights[0, 1] == pytest.approx(abs(z[0] - z[1]))
        assert graph.weights[0, 2] == pytest.approx(abs(z[0] - z[2]))

    def test_uniform_rescale_keeps_filter_mask(self):
        rng = np.random.default_rng(19)
        rows = [rng.normal(size=5) for _ in range(12)]
        base = median_filter(pairwise_distances(vectors_from(rows)))
        scaled_rows = [3.0 * np.asarray(r) for r in rows]
        scaled = median_filter(pairwise_distances(vectors_from(scaled_rows)))
        np.testing.assert_array_equal(base.mask, scaled.mask)


class TestMedianFilter:
    def test_triangle_keep_below(self):
        graph = triangle_graph()
        assert graph.median_distance == 2.0
        filtered = median_filter(graph, "keep_below")
        assert filtered.mask[0, 1] and filtered.mask[1, 2]
        assert not filtered.mask[0, 2]
        assert filtered.edge_count() == 2

    def test_triangle_keep_above(self):
        filtered = median_filter(triangle_graph(), "keep_above")
        assert filtered.mask[1, 2] and filtered.mask[0, 2]
        assert not filtered.mask[0, 1]

    def test_weights_unchanged(self):
        graph = triangle_graph()
        filtered = median_filter(graph)
        np.testing.assert_array_equal(filtered.weights, graph.weights)
        assert filtered.median_distance == graph.median_distance

    def test_all_equal_distances_keep_everything(self):
        # unit simplex corners: all pairwise distances sqrt(2)
        rows = np.eye(4).tolist()
        graph = pairwise_distances(vectors_from(rows))
        for mode in ("keep_below", "keep_above"):
            assert median_filter(graph, mode).edge_count() == 6

    def test_modes_cover_all_edges_and_meet_at_median(self):
        rng = np.random.default_rng(29)
        graph = pairwise_distances(vectors_from([rng.normal(size=4) for _ in range(9)]))
        below = median_filter(graph, "keep_below")
        above = median_filter(graph, "keep_above")
        off_diag = ~np.eye(graph.n, dtype=bool)
        np.testing.assert_array_equal(below.mask | above.mask, off_diag)
        overlap = below.mask & above.mask
        np.testing.assert_array_equal(
            overlap, (graph.weights == graph.median_distance) & off_diag
        )

    def test_odd_edge_count_keeps_ceil_half(self):
        rng = np.random.default_rng(33)
        rows = [rng.normal(size=8) for _ in range(50)]  # 1225 edges, odd
        graph = pairwise_distances(vectors_from(rows))
        upper = graph.weights[np.triu_indices(graph.n, k=1)]
        assert len(np.unique(upper)) == 1225  # all distinct
        assert median_filter(graph, "keep_below").edge_count() == 613

    def test_refiltering_rejected(self):
        filtered = median_filter(triangle_graph())
        with pytest.raises(DataError, match="complete"):
            median_filter(filtered)

    def test_bad_mode(self):
        with pytest.raises(ConfigError):
            median_filter(triangle_graph(), "keep_everything")


class TestAdjacencyMatrix:
    def test_unfiltered_equals_weights(self):
        graph = triangle_graph()
        np.testing.assert_array_equal(adjacency_matrix(graph, filtered=False), graph.weights)

    def test_filtered_zeroes_dropped_edges(self):
        filtered = median_filter(triangle_graph(), "keep_below")
        matrix = adjacency_matrix(filtered, filtered=True)
        assert matrix[0, 2] == 0.0 and matrix[2, 0] == 0.0
        assert matrix[0, 1] == 1.0 and matrix[1, 0] == 1.0
        assert matrix[1, 2] == 2.0 and matrix[2, 1] == 2.0

    def test_fully_masked_graph_renders_zero_matrix(self):
        graph = triangle_graph()
        empty = DistanceGraph(
            nodes=graph.nodes,
            weights=graph.weights,
            mask=np.zeros((3, 3), dtype=bool),
            median_distance=graph.median_distance,
            label=graph.label,
        )
        np.testing.assert_array_equal(adjacency_matrix(empty, filtered=True), np.zeros((3, 3)))

    def test_returns_copy(self):
        graph = triangle_graph()
        matrix = adjacency_matrix(graph, filtered=False)
        matrix[0, 1] = 99.0
        assert graph.weights[0, 1] == 1.0
