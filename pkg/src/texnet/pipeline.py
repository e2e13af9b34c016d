"""Pipeline orchestration: manifest -> features -> networks -> artifacts.

One deterministic configuration drives everything; two runs with equal
configs emit byte-identical CSVs and images. ``run.json`` records the config
echo and a SHA-256 per artifact.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from texnet.errors import ConfigError, DataError
from texnet.glcm import GLCM_FEATURE_NAMES, glcm_feature_vector
from texnet.histogram import (
    GRAY_HIST_COLUMNS,
    RGB_HIST_COLUMNS,
    compute_histogram,
    gray_hist_feature_vector,
    hist_bins_vector,
    hist_feature_vector,
)
from texnet.ingest import (
    GrayImage,
    RgbImage,
    SampleRecord,
    load_image,
    load_manifest,
    quantize,
    to_grayscale,
)
from texnet.network import (
    FILTER_MODES,
    SCALINGS,
    DistanceGraph,
    FeatureVector,
    adjacency_matrix,
    median_filter,
    pairwise_distances,
)
from texnet.render import render_heatmap, render_histogram

FEATURE_SETS = ("histogram", "glcm", "both")
HIST_SOURCES = ("rgb", "gray")
HIST_DISTANCE_SPACES = ("stats", "bins")
IMAGE_FORMATS = ("png", "pgm")
STAGES = ("features", "network", "render")
LABELS = (0, 1)

# Artifact groups each CLI stage emits.
_STAGE_GROUPS = {
    "features": frozenset({"features"}),
    "network": frozenset({"edges"}),
    "render": frozenset({"heatmaps", "histplots"}),
}
_ALL_GROUPS = frozenset({"features", "edges", "heatmaps", "histplots"})


@dataclass
class PipelineConfig:
    """Every knob of the pipeline; anything unset falls to its default."""

    manifest: Path
    out_dir: Path
    per_class: int = 50
    seed: int = 0
    feature_set: str = "both"
    glcm_distance: int = 1
    levels: int = 256
    symmetric: bool = True
    scaling: str = "none"
    filter_mode: str = "keep_below"
    hist_source: str = "rgb"
    hist_distance_space: str = "stats"
    image_format: str = "png"

    def __post_init__(self) -> None:
        self.manifest = Path(self.manifest)
        self.out_dir = Path(self.out_dir)

    def validate(self) -> None:
        if self.per_class < 2:
            raise ConfigError(
                f"per_class must be >= 2 (graphs need two nodes), got {self.per_class}"
            )
        if self.glcm_distance < 1:
            raise ConfigError(f"glcm_distance must be >= 1, got {self.glcm_distance}")
        if not 2 <= self.levels <= 256:
            raise ConfigError(f"levels must be in [2, 256], got {self.levels}")
        for name, value, allowed in (
            ("feature_set", self.feature_set, FEATURE_SETS),
            ("scaling", self.scaling, SCALINGS),
            ("filter_mode", self.filter_mode, FILTER_MODES),
            ("hist_source", self.hist_source, HIST_SOURCES),
            ("hist_distance_space", self.hist_distance_space, HIST_DISTANCE_SPACES),
            ("image_format", self.image_format, IMAGE_FORMATS),
        ):
            if value not in allowed:
                raise ConfigError(f"{name} must be one of {allowed}, got {value!r}")

    def feature_sets(self) -> tuple[str, ...]:
        if self.feature_set == "both":
            return ("histogram", "glcm")
        return (self.feature_set,)

    def hist_columns(self) -> tuple[str, ...]:
        return RGB_HIST_COLUMNS if self.hist_source == "rgb" else GRAY_HIST_COLUMNS

    def echo(self) -> dict:
        data = asdict(self)
        data["manifest"] = str(self.manifest)
        data["out_dir"] = str(self.out_dir)
        return data


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment line."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip().strip("'\"")
    return values


def export_features(
    vectors: list[FeatureVector], names: list[str] | tuple[str, ...], out: str | Path
) -> Path:
    """Write one row per sample: sample_id, the features (6 decimals), label.

    Rows are ordered by sample_id; the label prints as 1.0/0.0. An empty
    vector list yields a header-only file.
    """
    names = list(names)
    for vector in vectors:
        if vector.values.size != len(names):
            raise DataError(
                f"sample {vector.sample_id}: {vector.values.size} values for "
                f"{len(names)} columns"
            )
    out = Path(out)
    try:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["sample_id", *names, "label"])
            for vector in sorted(vectors, key=lambda v: v.sample_id):
                writer.writerow(
                    [
                        vector.sample_id,
                        *(f"{value:.6f}" for value in vector.values),
                        f"{float(vector.label):.1f}",
                    ]
                )
    except OSError as exc:
        raise DataError(f"cannot write {out}: {exc}") from exc
    return out


def export_edge_list(graph: DistanceGraph, out: str | Path) -> Path:
    """Write the upper-triangle edges: src, dst, distance (9 sig digits), kept."""
    out = Path(out)
    try:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["src", "dst", "distance", "kept"])
            for i in range(graph.n):
                for j in range(i + 1, graph.n):
                    writer.writerow(
                        [
                            graph.nodes[i],
                            graph.nodes[j],
                            f"{graph.weights[i, j]:.9g}",
                            int(graph.mask[i, j]),
                        ]
                    )
    except OSError as exc:
        raise DataError(f"cannot write {out}: {exc}") from exc
    return out


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(path.read_bytes())
    return digest.hexdigest()


@dataclass
class _LoadedSample:
    record: SampleRecord
    rgb: RgbImage
    gray: GrayImage       # full 8-bit plane, drives histograms
    glcm_gray: GrayImage  # quantized to cfg.levels, drives GLCM


def _load_samples(cfg: PipelineConfig) -> list[_LoadedSample]:
    manifest = load_manifest(cfg.manifest, per_class=cfg.per_class, seed=cfg.seed)
    samples = []
    for record in manifest:
        try:
            rgb = load_image(record.path)
            gray = to_grayscale(rgb)
            glcm_gray = quantize(gray, cfg.levels) if cfg.levels != 256 else gray
        except (DataError, ConfigError) as exc:
            raise type(exc)(f"sample {record.sample_id}: {exc}") from exc
        samples.append(
            _LoadedSample(record=record, rgb=rgb, gray=gray, glcm_gray=glcm_gray)
        )
    return samples


def _extract(
    cfg: PipelineConfig, feature_set: str, samples: list[_LoadedSample]
) -> list[FeatureVector]:
    vectors = []
    for sample in samples:
        record = sample.record
        try:
            if feature_set == "glcm":
                vector = glcm_feature_vector(
                    sample.glcm_gray,
                    label=record.label,
                    sample_id=record.sample_id,
                    distance=cfg.glcm_distance,
                    symmetric=cfg.symmetric,
                )
            elif cfg.hist_source == "rgb":
                vector = hist_feature_vector(sample.rgb, record.label, record.sample_id)
            else:
                vector = gray_hist_feature_vector(sample.gray, record.label, record.sample_id)
        except (DataError, ConfigError) as exc:
            raise type(exc)(f"sample {record.sample_id}: {exc}") from exc
        vectors.append(vector)
    return vectors


def _distance_vectors(
    cfg: PipelineConfig,
    feature_set: str,
    samples: list[_LoadedSample],
    vectors: list[FeatureVector],
) -> list[FeatureVector]:
    if feature_set == "histogram" and cfg.hist_distance_space == "bins":
        return [
            hist_bins_vector(
                s.rgb if cfg.hist_source == "rgb" else s.gray,
                s.record.label,
                s.record.sample_id,
            )
            for s in samples
        ]
    return vectors


def _build_graphs(
    cfg: PipelineConfig, vectors: list[FeatureVector]
) -> list[tuple[int, DistanceGraph, DistanceGraph]]:
    graphs = []
    for label in LABELS:
        class_vectors = [v for v in vectors if v.label == label]
        complete = pairwise_distances(class_vectors, scaling=cfg.scaling)
        graphs.append((label, complete, median_filter(complete, cfg.filter_mode)))
    return graphs


def _render_heatmaps(
    cfg: PipelineConfig,
    feature_set: str,
    label: int,
    complete: DistanceGraph,
    filtered: DistanceGraph,
) -> list[Path]:
    # Shared vmin/vmax keep the filtered image on the unfiltered scale.
    vmax = float(complete.weights.max())
    paths = []
    for suffix, graph, use_mask in (("", complete, False), ("_filtered", filtered, True)):
        out = cfg.out_dir / f"heatmap_{feature_set}_class{label}{suffix}.{cfg.image_format}"
        paths.append(
            render_heatmap(adjacency_matrix(graph, filtered=use_mask), out, vmin=0.0, vmax=vmax)
        )
    return paths


def _render_histogram_plots(cfg: PipelineConfig, samples: list[_LoadedSample]) -> list[Path]:
    plot_dir = cfg.out_dir / "histograms"
    plot_dir.mkdir(exist_ok=True)
    paths = []
    for sample in samples:
        if cfg.hist_source == "rgb":
            channels = [(ch, sample.rgb.channel(ch)) for ch in ("R", "G", "B")]
        else:
            channels = [("Gray", sample.gray.pixels)]
        for name, plane in channels:
            out = plot_dir / f"sample_{sample.record.sample_id:03d}_{name}.{cfg.image_format}"
            paths.append(render_histogram(compute_histogram(plane, name), out))
    return paths


def _emit(cfg: PipelineConfig, groups: frozenset[str], write_run_json: bool) -> dict:
    cfg.validate()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        samples = _load_samples(cfg)
        for feature_set in cfg.feature_sets():
            vectors = _extract(cfg, feature_set, samples)
            if "features" in groups:
                names = GLCM_FEATURE_NAMES if feature_set == "glcm" else cfg.hist_columns()
                written.append(
                    export_features(vectors, names, cfg.out_dir / f"features_{feature_set}.csv")
                )
            if groups & {"edges", "heatmaps"}:
                graphs = _build_graphs(cfg, _distance_vectors(cfg, feature_set, samples, vectors))
                for label, complete, filtered in graphs:
                    if "edges" in groups:
                        base = cfg.out_dir / f"edges_{feature_set}_class{label}"
                        written.append(export_edge_list(complete, f"{base}.csv"))
                        written.append(export_edge_list(filtered, f"{base}_filtered.csv"))
                    if "heatmaps" in groups:
                        written.extend(
                            _render_heatmaps(cfg, feature_set, label, complete, filtered)
                        )
            if "histplots" in groups and feature_set == "histogram":
                written.extend(_render_histogram_plots(cfg, samples))
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    manifest = {
        "config": cfg.echo(),
        "artifacts": [
            {"path": path.relative_to(cfg.out_dir).as_posix(), "sha256": sha256_file(path)}
            for path in sorted(written)
        ],
    }
    if write_run_json:
        run_path = cfg.out_dir / "run.json"
        run_path.write_text(
            json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    return manifest


def run_stage(cfg: PipelineConfig, stage: str) -> dict:
    """Run one CLI stage, emitting only its artifact group; returns the run manifest."""
    if stage not in _STAGE_GROUPS:
        raise ConfigError(f"stage must be one of {tuple(_STAGE_GROUPS)}, got {stage!r}")
    return _emit(cfg, _STAGE_GROUPS[stage], write_run_json=False)


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Full run: feature CSVs, edge lists, heatmaps, histogram plots, run.json."""
    return _emit(cfg, _ALL_GROUPS, write_run_json=True)
