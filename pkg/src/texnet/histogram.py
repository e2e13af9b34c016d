"""Frequency histograms and their moment statistics.

Each channel gets a 256-bin count histogram; the feature set is the five
statistics of the pixel-intensity distribution it represents: median, mean,
standard deviation (population), Fisher excess kurtosis, and skew.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from texnet.errors import ConfigError, DataError
from texnet.ingest import GrayImage, RgbImage
from texnet.network import FeatureVector

N_BINS = 256
CHANNELS = ("R", "G", "B", "Gray")
STAT_NAMES = ("median", "mean", "std", "kurtosis", "skew")
RGB_HIST_COLUMNS = tuple(f"{ch}_{stat}" for ch in ("R", "G", "B") for stat in STAT_NAMES)
GRAY_HIST_COLUMNS = tuple(f"Gray_{stat}" for stat in STAT_NAMES)


@dataclass
class ChannelHistogram:
    """256 intensity counts for one channel plane."""

    bins: np.ndarray
    channel: str
    pixel_count: int

    def __post_init__(self) -> None:
        bins = np.asarray(self.bins, dtype=np.int64).ravel()
        if bins.size != N_BINS:
            raise DataError(f"histogram must have {N_BINS} bins, got {bins.size}")
        if bins.min() < 0:
            raise DataError("histogram counts must be non-negative")
        if self.channel not in CHANNELS:
            raise ConfigError(f"channel must be one of {CHANNELS}, got {self.channel!r}")
        if int(bins.sum()) != self.pixel_count:
            raise DataError(
                f"bin counts sum to {int(bins.sum())}, expected pixel_count="
                f"{self.pixel_count}"
            )
        self.bins = bins


@dataclass(frozen=True)
class HistStats:
    """The five statistics, in their fixed feature order."""

    median: float
    mean: float
    std: float
    kurtosis: float
    skew: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.median, self.mean, self.std, self.kurtosis, self.skew)


def compute_histogram(plane: np.ndarray, channel: str = "Gray") -> ChannelHistogram:
    """Count pixels per intensity value for one 2-D channel plane."""
    plane = np.asarray(plane)
    if plane.ndim != 2 or plane.size == 0:
        raise DataError(f"plane must be a non-empty 2-D array, got shape {plane.shape}")
    if not np.issubdtype(plane.dtype, np.integer):
        raise DataError(f"plane must be integer, got dtype {plane.dtype}")
    if plane.min() < 0 or plane.max() >= N_BINS:
        raise DataError(f"plane intensities must lie in [0, {N_BINS - 1}]")
    bins = np.bincount(plane.ravel().astype(np.int64), minlength=N_BINS)
    return ChannelHistogram(bins=bins, channel=channel, pixel_count=int(plane.size))


def histogram_stats(hist: ChannelHistogram) -> HistStats:
    """Moments of the pixel distribution the histogram represents.

    std is the population form; skew and kurtosis are 0 by convention when
    std is 0. The median is the lower median: the smallest intensity whose
    cumulative count reaches half the pixels.
    """
    if hist.pixel_count < 1:
        raise DataError("empty histogram")
    values = np.arange(N_BINS, dtype=np.float64)
    p = hist.bins / hist.pixel_count
    mean = float(p @ values)
    centered = values - mean
    variance = float(p @ centered**2)
    std = float(np.sqrt(variance))
    if std == 0.0:
        skew = 0.0
        kurtosis = 0.0
    else:
        m3 = float(p @ centered**3)
        m4 = float(p @ centered**4)
        skew = m3 / std**3
        kurtosis = m4 / std**4 - 3.0
    cumulative = np.cumsum(hist.bins)
    median = float(np.flatnonzero(2 * cumulative >= hist.pixel_count)[0])
    return HistStats(median=median, mean=mean, std=std, kurtosis=kurtosis, skew=skew)


def hist_feature_vector(img: RgbImage, label: int, sample_id: int) -> FeatureVector:
    """15-dim vector: the five stats for R, then G, then B."""
    stats = [
        histogram_stats(compute_histogram(img.channel(ch), ch)) for ch in ("R", "G", "B")
    ]
    values = np.concatenate([s.as_tuple() for s in stats])
    return FeatureVector(values=values, label=label, sample_id=sample_id)


def gray_hist_feature_vector(img: GrayImage, label: int, sample_id: int) -> FeatureVector:
    """5-dim variant over the grayscale plane."""
    stats = histogram_stats(compute_histogram(img.pixels, "Gray"))
    return FeatureVector(
        values=np.asarray(stats.as_tuple()), label=label, sample_id=sample_id
    )


def hist_bins_vector(
    img: RgbImage | GrayImage, label: int, sample_id: int
) -> FeatureVector:
    """Raw bin counts as the feature vector (768-dim RGB, 256-dim gray)."""
    if isinstance(img, RgbImage):
        bins = [compute_histogram(img.channel(ch), ch).bins for ch in ("R", "G", "B")]
        values = np.concatenate(bins).astype(np.float64)
    else:
        values = compute_histogram(img.pixels, "Gray").bins.astype(np.float64)
    return FeatureVector(values=values, label=label, sample_id=sample_id)
