"""Shared fixtures: synthetic labeled PNG datasets and acceptance reporting."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings
from PIL import Image

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


def synthesize_dataset(
    root: Path, per_class: int = 6, size: int = 32, seed: int = 1234
) -> Path:
    """Write 2*per_class labeled RGB PNGs plus a manifest.csv; return its path.

    Positives (label 1) are bright blocky textures, negatives (label 0) dark
    smooth gradients, so the two classes separate in both feature spaces.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for label in (1, 0):
        for k in range(per_class):
            if label == 1:
                blocks = rng.integers(120, 220, size=(size // 4, size // 4, 3))
                arr = np.repeat(np.repeat(blocks, 4, axis=0), 4, axis=1)
                arr = arr + rng.integers(0, 30, size=arr.shape)
            else:
                column = np.linspace(10, 90, size).astype(np.int64)
                plane = np.repeat(column[None, :], size, axis=0)
                arr = np.stack([plane, plane // 2 + 5, plane // 3 + 10], axis=2)
                arr = arr + rng.integers(0, 12, size=arr.shape)
            pixels = np.clip(arr, 0, 255).astype(np.uint8)
            name = f"img_{label}_{k}.png"
            Image.fromarray(pixels, mode="RGB").save(root / name, format="PNG")
            rows.append((name, label))
    manifest = root / "manifest.csv"
    lines = ["path,label"] + [f"{path},{label}" for path, label in rows]
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


@pytest.fixture(scope="session")
def dataset_manifest(tmp_path_factory) -> Path:
    """12-image synthetic dataset, 6 per class."""
    root = tmp_path_factory.mktemp("dataset")
    return synthesize_dataset(root)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance criterion."""
    outcomes: dict[str, str] = {}
    for key, verdict in (("failed", "FAIL"), ("error", "FAIL"), ("skipped", "SKIP"), ("passed", "PASS")):
        for report in terminalreporter.stats.get(key, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            if key == "passed" and getattr(report, "when", "call") != "call":
                continue
            outcomes.setdefault(nodeid.split("::")[-1], verdict)
    if outcomes:
        terminalreporter.section("acceptance criteria")
        for name in sorted(outcomes):
            terminalreporter.write_line(f"{outcomes[name]}  {name}")
