"""Texture features, per-class distance networks, and adjacency heatmaps."""

from texnet.errors import ConfigError, DataError
from texnet.glcm import (
    ANGLES,
    GLCM_FEATURE_NAMES,
    Glcm,
    GlcmFeatures,
    GlcmOffset,
    compute_glcm,
    glcm_feature_vector,
    glcm_features,
)
from texnet.histogram import (
    GRAY_HIST_COLUMNS,
    RGB_HIST_COLUMNS,
    ChannelHistogram,
    HistStats,
    compute_histogram,
    gray_hist_feature_vector,
    hist_bins_vector,
    hist_feature_vector,
    histogram_stats,
)
from texnet.ingest import (
    GrayImage,
    RgbImage,
    SampleManifest,
    SampleRecord,
    load_image,
    load_manifest,
    quantize,
    to_grayscale,
)
from texnet.network import (
    DistanceGraph,
    FeatureVector,
    adjacency_matrix,
    lower_median,
    median_filter,
    pairwise_distances,
)
from texnet.pipeline import (
    PipelineConfig,
    export_edge_list,
    export_features,
    run_pipeline,
    run_stage,
)
from texnet.render import render_heatmap, render_histogram, write_gray_image

__version__ = "0.1.0"

__all__ = [
    "ANGLES",
    "ChannelHistogram",
    "ConfigError",
    "DataError",
    "DistanceGraph",
    "FeatureVector",
    "GLCM_FEATURE_NAMES",
    "GRAY_HIST_COLUMNS",
    "Glcm",
    "GlcmFeatures",
    "GlcmOffset",
    "GrayImage",
    "HistStats",
    "PipelineConfig",
    "RGB_HIST_COLUMNS",
    "RgbImage",
    "SampleManifest",
    "SampleRecord",
    "adjacency_matrix",
    "compute_glcm",
    "compute_histogram",
    "export_edge_list",
    "export_features",
    "glcm_feature_vector",
    "glcm_features",
    "gray_hist_feature_vector",
    "hist_bins_vector",
    "hist_feature_vector",
    "histogram_stats",
    "load_image",
    "load_manifest",
    "lower_median",
    "median_filter",
    "pairwise_distances",
    "quantize",
    "render_heatmap",
    "render_histogram",
    "run_pipeline",
    "run_stage",
    "to_grayscale",
    "write_gray_image",
]
