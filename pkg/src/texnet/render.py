"""Deterministic raster output: adjacency heatmaps and histogram bar plots.

Everything is written as 8-bit grayscale, either PNG or binary PGM (P5)
depending on the output path's extension. Rendering is pure rasterization, so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from texnet.errors import ConfigError, DataError
from texnet.histogram import ChannelHistogram

HIST_CANVAS_WIDTH = 512
HIST_CANVAS_HEIGHT = 256


def write_gray_image(pixels: np.ndarray, out: str | Path) -> Path:
    """Write a 2-D uint8 array as PNG, or PGM when the suffix is .pgm."""
    pixels = np.asarray(pixels)
    if pixels.ndim != 2 or pixels.dtype != np.uint8:
        raise DataError(
            f"expected a 2-D uint8 array, got shape {pixels.shape} dtype {pixels.dtype}"
        )
    out = Path(out)
    try:
        if out.suffix.lower() == ".pgm":
            height, width = pixels.shape
            header = f"P5\n{width} {height}\n255\n".encode("ascii")
            out.write_bytes(header + pixels.tobytes())
        else:
            Image.fromarray(pixels, mode="L").save(out, format="PNG")
    except OSError as exc:
        raise DataError(f"cannot write {out}: {exc}") from exc
    return out


def render_heatmap(
    matrix: np.ndarray,
    out: str | Path,
    vmin: float | None = None,
    vmax: float | None = None,
    scale: int = 1,
    invert: bool = False,
) -> Path:
    """Map matrix values linearly onto [0, 255] and write one pixel per cell.

    vmin/vmax default to the matrix extremes; a flat matrix renders all-black.
    ``invert`` flips the mapping (large values dark); ``scale`` integer-upscales
    each cell to a scale x scale block.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.size == 0:
        raise DataError(f"heatmap input must be a non-empty 2-D matrix, got shape {matrix.shape}")
    if not np.isfinite(matrix).all():
        raise DataError("heatmap input has non-finite entries")
    if scale < 1:
        raise ConfigError(f"scale must be >= 1, got {scale}")
    lo = float(matrix.min()) if vmin is None else float(vmin)
    hi = float(matrix.max()) if vmax is None else float(vmax)
    if hi < lo:
        raise ConfigError(f"vmax {hi} < vmin {lo}")
    if hi == lo:
        pixels = np.zeros(matrix.shape, dtype=np.uint8)
    else:
        scaled = 255.0 * (matrix - lo) / (hi - lo)
        pixels = np.clip(np.floor(scaled + 0.5), 0, 255).astype(np.uint8)
    if invert:
        pixels = np.uint8(255) - pixels
    if scale > 1:
        pixels = np.repeat(np.repeat(pixels, scale, axis=0), scale, axis=1)
    return write_gray_image(pixels, out)


def render_histogram(hist: ChannelHistogram, out: str | Path) -> Path:
    """Draw the 256 bins as white bars on a fixed 512x256 black canvas.

    Bar height is count / max count of the full canvas height, two pixels of
    width per bin.
    """
    canvas = np.zeros((HIST_CANVAS_HEIGHT, HIST_CANVAS_WIDTH), dtype=np.uint8)
    max_count = int(hist.bins.max())
    if max_count > 0:
        heights = np.floor(
            hist.bins / max_count * HIST_CANVAS_HEIGHT + 0.5
        ).astype(np.int64)
        rows = np.arange(HIST_CANVAS_HEIGHT)[:, None]
        bars = rows >= (HIST_CANVAS_HEIGHT - heights)[None, :]
        canvas = (np.repeat(bars, 2, axis=1) * np.uint8(255)).astype(np.uint8)
    return write_gray_image(canvas, out)
