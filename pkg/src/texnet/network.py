"""Per-class weighted graphs built from feature-vector Euclidean distances.

One graph is built per class: nodes are the class's samples, edge weights the
pairwise Euclidean distances between their feature vectors. Sparsification
keeps the edges on one side of the median distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from texnet.errors import ConfigError, DataError

SCALINGS = ("none", "zscore")
FILTER_MODES = ("keep_below", "keep_above")


@dataclass
class FeatureVector:
    """Fixed-order real feature vector with its class label and sample id."""

    values: np.ndarray
    label: int
    sample_id: int

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if values.size == 0:
            raise DataError("feature vector must be non-empty")
        if not np.isfinite(values).all():
            raise DataError(
                f"sample {self.sample_id}: feature vector has non-finite entries"
            )
        if self.label not in (0, 1):
            raise DataError(f"label must be 0 or 1, got {self.label}")
        self.values = values


@dataclass
class DistanceGraph:
    """Complete or median-filtered weighted graph over one class's samples.

    ``weights`` is symmetric with a zero diagonal; ``mask`` marks retained
    edges (symmetric, False on the diagonal).
    """

    nodes: list[int]
    weights: np.ndarray
    mask: np.ndarray
    median_distance: float
    label: int

    @property
    def n(self) -> int:
        return len(self.nodes)

    def is_complete(self) -> bool:
        expected = ~np.eye(self.n, dtype=bool)
        return bool(np.array_equal(self.mask, expected))

    def edge_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.mask, k=1)))


def lower_median(values: np.ndarray) -> float:
    """Median that resolves even-length ties to the lower middle element."""
    flat = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if flat.size == 0:
        raise DataError("median of empty collection")
    return float(flat[(flat.size - 1) // 2])


def pairwise_distances(
    vectors: list[FeatureVector], scaling: str = "none"
) -> DistanceGraph:
    """Build the complete Euclidean-distance graph over same-class vectors.

    With ``scaling='zscore'`` each dimension is standardized first;
    zero-variance dimensions pass through unscaled.
    """
    if scaling not in SCALINGS:
        raise ConfigError(f"scaling must be one of {SCALINGS}, got {scaling!r}")
    if len(vectors) < 2:
        raise DataError(f"need at least 2 vectors, got {len(vectors)}")
    labels = {v.label for v in vectors}
    if len(labels) != 1:
        raise DataError(f"vectors mix labels {sorted(labels)}")
    dims = {v.values.size for v in vectors}
    if len(dims) != 1:
        raise DataError(f"vectors mix dimensions {sorted(dims)}")
    ids = [v.sample_id for v in vectors]
    if len(set(ids)) != len(ids):
        raise DataError("duplicate sample_id among vectors")

    ordered = sorted(vectors, key=lambda v: v.sample_id)
    nodes = [v.sample_id for v in ordered]
    matrix = np.stack([v.values for v in ordered]).astype(np.float64)
    if scaling == "zscore":
        mean = matrix.mean(axis=0)
        std = matrix.std(axis=0)
        varying = std > 0
        matrix = matrix.copy()
        matrix[:, varying] = (matrix[:, varying] - mean[varying]) / std[varying]

    # Broadcasted differences keep weights bitwise symmetric: entry (i, j) and
    # (j, i) square the same values and reduce in the same order.
    diff = matrix[:, None, :] - matrix[None, :, :]
    weights = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    n = len(nodes)
    upper = weights[np.triu_indices(n, k=1)]
    return DistanceGraph(
        nodes=nodes,
        weights=weights,
        mask=~np.eye(n, dtype=bool),
        median_distance=lower_median(upper),
        label=ordered[0].label,
    )


def median_filter(graph: DistanceGraph, mode: str = "keep_below") -> DistanceGraph:
    """Sparsify a complete graph around its median edge weight.

    ``keep_below`` retains edges with weight <= median, ``keep_above`` those
    with weight >= median; edges equal to the median survive both modes.
    """
    if mode not in FILTER_MODES:
        raise ConfigError(f"mode must be one of {FILTER_MODES}, got {mode!r}")
    if not graph.is_complete():
        raise DataError("median_filter expects a complete (unfiltered) graph")
    if mode == "keep_below":
        keep = graph.weights <= graph.median_distance
    else:
        keep = graph.weights >= graph.median_distance
    mask = keep & ~np.eye(graph.n, dtype=bool)
    return DistanceGraph(
        nodes=list(graph.nodes),
        weights=graph.weights.copy(),
        mask=mask,
        median_distance=graph.median_distance,
        label=graph.label,
    )


def adjacency_matrix(graph: DistanceGraph, filtered: bool = True) -> np.ndarray:
    """Weight matrix with masked-out edges (and the diagonal) zeroed."""
    matrix = graph.weights.copy()
    if filtered:
        matrix[~graph.mask] = 0.0
    else:
        np.fill_diagonal(matrix, 0.0)
    return matrix
