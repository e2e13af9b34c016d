"""Grey-level co-occurrence matrices and the six texture features.

A GLCM counts ordered pixel pairs (p, q) where q sits at a fixed displacement
from p. Rows increase downward, so the four standard orientations map to
displacements (row, col): 0 deg -> (0, +d), 45 deg -> (-d, +d),
90 deg -> (-d, 0), 135 deg -> (-d, -d). Symmetric matrices accumulate both
orderings of each pair; normalized matrices divide by the total pair count.

Features over the normalized matrix P:

    contrast      = sum P[i,j] * (i - j)^2
    dissimilarity = sum P[i,j] * |i - j|
    homogeneity   = sum P[i,j] / (1 + (i - j)^2)
    ASM           = sum P[i,j]^2
    energy        = sqrt(ASM)
    correlation   = sum P[i,j] * (i - mu_i)(j - mu_j) / sqrt(var_i * var_j)

with mu/var the marginal row and column means and variances. A degenerate
marginal (zero variance) yields correlation 1 rather than NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from texnet.errors import ConfigError, DataError
from texnet.ingest import GrayImage
from texnet.network import FeatureVector

ANGLES = (0, 45, 90, 135)
_UNIT_DISPLACEMENTS = {0: (0, 1), 45: (-1, 1), 90: (-1, 0), 135: (-1, -1)}

# Feature-major, angle-minor vector layout; column names match the CSV schema.
FEATURE_COLUMN_BASES = ("contrast", "dissimilarity", "homogeneity", "ASM", "energy", "correlation")
_FEATURE_ATTRS = ("contrast", "dissimilarity", "homogeneity", "asm", "energy", "correlation")
GLCM_FEATURE_NAMES = tuple(
    f"{base}_{angle}" for base in FEATURE_COLUMN_BASES for angle in ANGLES
)


@dataclass(frozen=True)
class GlcmOffset:
    """Pixel-pair displacement: distance in pixels along one of four angles."""

    distance: int = 1
    angle: int = 0

    def __post_init__(self) -> None:
        if self.distance < 1:
            raise ConfigError(f"distance must be >= 1, got {self.distance}")
        if self.angle not in ANGLES:
            raise ConfigError(f"angle must be one of {ANGLES}, got {self.angle}")

    def displacement(self) -> tuple[int, int]:
        d_row, d_col = _UNIT_DISPLACEMENTS[self.angle]
        return (d_row * self.distance, d_col * self.distance)


@dataclass
class Glcm:
    """Co-occurrence counts and (optionally) their normalized probabilities."""

    counts: np.ndarray
    p: np.ndarray
    levels: int
    offset: GlcmOffset
    symmetric: bool
    normalized: bool


def compute_glcm(
    img: GrayImage,
    offset: GlcmOffset = GlcmOffset(),
    symmetric: bool = True,
    normalize: bool = True,
) -> Glcm:
    """Count intensity pairs at the offset's displacement.

    Raises if the displacement does not fit inside the image (no valid pairs).
    """
    d_row, d_col = offset.displacement()
    height, width = img.pixels.shape
    if height - abs(d_row) <= 0 or width - abs(d_col) <= 0:
        raise DataError(
            f"no valid pixel pairs: offset {offset.distance}px@{offset.angle}deg "
            f"does not fit a {height}x{width} image"
        )
    src = img.pixels[
        max(0, -d_row) : height - max(0, d_row),
        max(0, -d_col) : width - max(0, d_col),
    ].astype(np.int64)
    dst = img.pixels[
        max(0, d_row) : height - max(0, -d_row),
        max(0, d_col) : width - max(0, -d_col),
    ].astype(np.int64)
    levels = img.levels
    flat = src.ravel() * levels + dst.ravel()
    counts = np.bincount(flat, minlength=levels * levels).reshape(levels, levels)
    if symmetric:
        counts = counts + counts.T
    if normalize:
        p = counts / counts.sum()
    else:
        p = counts.astype(np.float64)
    return Glcm(
        counts=counts,
        p=p,
        levels=levels,
        offset=offset,
        symmetric=symmetric,
        normalized=normalize,
    )


@dataclass(frozen=True)
class GlcmFeatures:
    """The six scalar texture features of one GLCM."""

    contrast: float
    dissimilarity: float
    homogeneity: float
    asm: float
    energy: float
    correlation: float

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, attr) for attr in _FEATURE_ATTRS)


def glcm_features(glcm: Glcm) -> GlcmFeatures:
    """Compute the six features; requires a normalized matrix."""
    if not glcm.normalized:
        raise DataError("glcm_features requires a normalized GLCM")
    p = glcm.p
    total = p.sum()
    if not np.isclose(total, 1.0, rtol=0.0, atol=1e-6):
        raise DataError(f"GLCM probabilities sum to {total}, expected 1")
    idx = np.arange(glcm.levels, dtype=np.float64)
    diff = idx[:, None] - idx[None, :]
    contrast = float((p * diff**2).sum())
    dissimilarity = float((p * np.abs(diff)).sum())
    homogeneity = float((p / (1.0 + diff**2)).sum())
    asm = float((p * p).sum())
    energy = float(np.sqrt(asm))

    row_marginal = p.sum(axis=1)
    col_marginal = p.sum(axis=0)
    mu_i = float(row_marginal @ idx)
    mu_j = float(col_marginal @ idx)
    var_i = float(row_marginal @ (idx - mu_i) ** 2)
    var_j = float(col_marginal @ (idx - mu_j) ** 2)
    if var_i == 0.0 or var_j == 0.0:
        correlation = 1.0
    else:
        covariance = float((p * np.outer(idx - mu_i, idx - mu_j)).sum())
        correlation = covariance / float(np.sqrt(var_i * var_j))
    return GlcmFeatures(
        contrast=contrast,
        dissimilarity=dissimilarity,
        homogeneity=homogeneity,
        asm=asm,
        energy=energy,
        correlation=correlation,
    )


def glcm_feature_vector(
    img: GrayImage,
    label: int,
    sample_id: int,
    distance: int = 1,
    symmetric: bool = True,
    angles: tuple[int, ...] = ANGLES,
) -> FeatureVector:
    """24-dim vector: each feature at every angle, feature-major."""
    per_angle = {
        angle: glcm_features(
            compute_glcm(img, GlcmOffset(distance, angle), symmetric=symmetric)
        )
        for angle in angles
    }
    values = np.array(
        [
            getattr(per_angle[angle], attr)
            for attr in _FEATURE_ATTRS
            for angle in angles
        ],
        dtype=np.float64,
    )
    return FeatureVector(values=values, label=label, sample_id=sample_id)
