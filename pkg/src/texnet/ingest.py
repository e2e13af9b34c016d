"""Dataset ingestion: sample manifests, PNG decoding, grayscale conversion.

The manifest is a UTF-8 CSV with header ``path,label`` where label is 0
(negative) or 1 (positive). Image paths are resolved relative to the manifest
file's directory. Images are 8-bit PNGs; grayscale, palette and alpha variants
are promoted to plain RGB before any processing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from texnet.errors import ConfigError, DataError

# Integer percent weights for the R, G, B luminance combination. Working in
# integers keeps round-half-up exact: float 0.3*255 is 76.499...9 and would
# round down.
_GRAY_WEIGHTS = (30, 59, 11)


@dataclass(frozen=True)
class SampleRecord:
    """One manifest entry: a labeled image on disk."""

    sample_id: int
    path: Path
    label: int


@dataclass
class SampleManifest:
    """Ordered list of samples; sample_ids are 0..N-1 in record order."""

    records: list[SampleRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def for_label(self, label: int) -> list[SampleRecord]:
        return [r for r in self.records if r.label == label]

    def label_counts(self) -> dict[int, int]:
        counts = {0: 0, 1: 0}
        for r in self.records:
            counts[r.label] += 1
        return counts


@dataclass
class RgbImage:
    """8-bit RGB image stored as an (H, W, 3) uint8 array."""

    planes: np.ndarray

    def __post_init__(self) -> None:
        planes = np.asarray(self.planes)
        if planes.ndim != 3 or planes.shape[2] != 3:
            raise DataError(f"RGB image must be (H, W, 3), got shape {planes.shape}")
        if planes.shape[0] < 1 or planes.shape[1] < 1:
            raise DataError("RGB image must have positive dimensions")
        if not np.issubdtype(planes.dtype, np.integer):
            raise DataError(f"RGB planes must be integer, got dtype {planes.dtype}")
        if planes.min() < 0 or planes.max() > 255:
            raise DataError("RGB intensities must lie in [0, 255]")
        self.planes = planes.astype(np.uint8)

    @property
    def height(self) -> int:
        return self.planes.shape[0]

    @property
    def width(self) -> int:
        return self.planes.shape[1]

    def channel(self, name: str) -> np.ndarray:
        """Return one 2-D channel plane; name is 'R', 'G', or 'B'."""
        if name not in ("R", "G", "B"):
            raise ConfigError(f"unknown channel {name!r}, expected R, G, or B")
        return self.planes[:, :, ("R", "G", "B").index(name)]


@dataclass
class GrayImage:
    """Single-plane image with intensities in [0, levels-1]."""

    pixels: np.ndarray
    levels: int = 256

    def __post_init__(self) -> None:
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2:
            raise DataError(f"gray image must be 2-D, got shape {pixels.shape}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise DataError("gray image must have positive dimensions")
        if not np.issubdtype(pixels.dtype, np.integer):
            raise DataError(f"gray pixels must be integer, got dtype {pixels.dtype}")
        if not 2 <= self.levels <= 256:
            raise ConfigError(f"levels must be in [2, 256], got {self.levels}")
        if pixels.min() < 0 or pixels.max() >= self.levels:
            raise DataError(f"gray intensities must lie in [0, {self.levels - 1}]")
        self.pixels = pixels.astype(np.uint8)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def load_manifest(
    path: str | Path, per_class: int | None = None, seed: int = 0
) -> SampleManifest:
    """Parse a ``path,label`` CSV into a SampleManifest.

    With ``per_class`` set, deterministically subsamples that many records per
    label using ``seed``; file order is preserved and sample_ids renumbered.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"manifest not found: {path}")
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [col.strip() for col in header] != ["path", "label"]:
            raise DataError(f"manifest header must be 'path,label', got {header!r}")
        rows: list[tuple[str, int]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise DataError(
                    f"{path}:{lineno}: expected 2 fields, got {len(row)}"
                )
            raw_path, raw_label = row[0].strip(), row[1].strip()
            if raw_label not in ("0", "1"):
                raise DataError(
                    f"{path}:{lineno}: label must be 0 or 1, got {raw_label!r}"
                )
            if not raw_path:
                raise DataError(f"{path}:{lineno}: empty image path")
            rows.append((raw_path, int(raw_label)))
    if not rows:
        raise DataError("empty manifest")
    if per_class is not None:
        rows = _subsample_balanced(rows, per_class, seed)
    base = path.parent
    records = [
        SampleRecord(sample_id=i, path=base / p, label=label)
        for i, (p, label) in enumerate(rows)
    ]
    return SampleManifest(records)


def _subsample_balanced(
    rows: list[tuple[str, int]], per_class: int, seed: int
) -> list[tuple[str, int]]:
    if per_class < 1:
        raise ConfigError(f"per_class must be >= 1, got {per_class}")
    rng = np.random.default_rng(seed)
    keep: list[int] = []
    for label in (0, 1):
        indices = [i for i, (_, lab) in enumerate(rows) if lab == label]
        if len(indices) < per_class:
            raise DataError(
                f"per_class={per_class} exceeds the {len(indices)} available "
                f"label-{label} records"
            )
        chosen = rng.choice(len(indices), size=per_class, replace=False)
        keep.extend(indices[int(c)] for c in chosen)
    keep.sort()
    return [rows[i] for i in keep]


def load_image(path: str | Path) -> RgbImage:
    """Decode an 8-bit PNG to RGB.

    Grayscale PNGs are promoted by channel replication; palette and alpha
    images are composited over black first, so every input takes one
    canonical path.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"image not found: {path}")
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "P":
                im = im.convert("RGBA")
            elif im.mode == "LA":
                im = im.convert("RGBA")
            if im.mode == "RGBA":
                background = Image.new("RGBA", im.size, (0, 0, 0, 255))
                im = Image.alpha_composite(background, im).convert("RGB")
            elif im.mode == "L":
                im = im.convert("RGB")
            elif im.mode != "RGB":
                raise DataError(
                    f"{path}: unsupported image mode {im.mode!r}; "
                    "expected an 8-bit PNG"
                )
            planes = np.asarray(im, dtype=np.uint8)
    except DataError:
        raise
    except Exception as exc:
        raise DataError(f"cannot decode {path}: {exc}") from exc
    return RgbImage(planes)


def to_grayscale(img: RgbImage) -> GrayImage:
    """Combine R, G, B with weights 0.3/0.59/0.11, rounding half up."""
    wr, wg, wb = _GRAY_WEIGHTS
    planes = img.planes.astype(np.int64)
    gray = (wr * planes[:, :, 0] + wg * planes[:, :, 1] + wb * planes[:, :, 2] + 50) // 100
    return GrayImage(np.clip(gray, 0, 255).astype(np.uint8), levels=256)


def quantize(img: GrayImage, levels: int) -> GrayImage:
    """Rescale intensities to [0, levels-1] via pixel * levels // input_levels."""
    if not 2 <= levels <= 256:
        raise ConfigError(f"levels must be in [2, 256], got {levels}")
    pixels = img.pixels.astype(np.int64) * levels // img.levels
    return GrayImage(pixels.astype(np.uint8), levels=levels)
