"""Command-line interface.

Subcommands run the pipeline up to a stage: ``features`` emits the feature
CSVs, ``network`` the edge lists, ``render`` the heatmaps and histogram
plots, ``pipeline`` everything plus run.json. Options may come from a
key=value config file (--config); explicit flags win.

Exit codes: 0 success, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields

from texnet.errors import ConfigError, DataError
from texnet.pipeline import (
    FEATURE_SETS,
    HIST_DISTANCE_SPACES,
    HIST_SOURCES,
    IMAGE_FORMATS,
    PipelineConfig,
    load_config_file,
    run_pipeline,
    run_stage,
)
from texnet.network import FILTER_MODES, SCALINGS

_COMMANDS = ("features", "network", "render", "pipeline")


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


_FIELD_PARSERS = {
    "manifest": str,
    "out_dir": str,
    "per_class": int,
    "seed": int,
    "feature_set": str,
    "glcm_distance": int,
    "levels": int,
    "symmetric": _parse_bool,
    "scaling": str,
    "filter_mode": str,
    "hist_source": str,
    "hist_distance_space": str,
    "image_format": str,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="texnet",
        description="Texture features, per-class distance networks, and adjacency heatmaps.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "features": "extract features and write the per-set CSVs",
        "network": "build per-class networks and write edge lists",
        "render": "write adjacency heatmaps and per-sample histogram plots",
        "pipeline": "run everything and write run.json",
    }
    for command in _COMMANDS:
        sub = subparsers.add_parser(command, help=helps[command])
        _add_common_options(sub)
    return parser


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file; flags override it")
    parser.add_argument("--manifest", help="path,label CSV driving the run")
    parser.add_argument("--out-dir", dest="out_dir", help="artifact output directory")
    parser.add_argument("--per-class", dest="per_class", type=int, help="samples kept per label (default 50)")
    parser.add_argument("--seed", type=int, help="subsampling seed (default 0)")
    parser.add_argument("--feature-set", dest="feature_set", choices=FEATURE_SETS)
    parser.add_argument("--glcm-distance", dest="glcm_distance", type=int, help="GLCM offset distance (default 1)")
    parser.add_argument("--levels", type=int, help="gray levels for GLCM (default 256)")
    parser.add_argument(
        "--symmetric",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="accumulate GLCM pairs in both orders (default on)",
    )
    parser.add_argument("--scaling", choices=SCALINGS)
    parser.add_argument("--filter-mode", dest="filter_mode", choices=FILTER_MODES)
    parser.add_argument("--hist-source", dest="hist_source", choices=HIST_SOURCES)
    parser.add_argument(
        "--hist-distance-space", dest="hist_distance_space", choices=HIST_DISTANCE_SPACES
    )
    parser.add_argument("--image-format", dest="image_format", choices=IMAGE_FORMATS)


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    """Merge defaults, then the config file, then explicit flags."""
    values: dict = {}
    if args.config:
        for key, raw in load_config_file(args.config).items():
            if key not in _FIELD_PARSERS:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                values[key] = _FIELD_PARSERS[key](raw)
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: {exc}") from exc
    for field in fields(PipelineConfig):
        flag_value = getattr(args, field.name, None)
        if flag_value is not None:
            values[field.name] = flag_value
    for required in ("manifest", "out_dir"):
        if required not in values:
            raise ConfigError(f"--{required.replace('_', '-')} is required")
    cfg = PipelineConfig(**values)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "pipeline":
            manifest = run_pipeline(cfg)
        else:
            manifest = run_stage(cfg, args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(manifest['artifacts'])} artifacts to {cfg.out_dir}")
    return 0


def entry() -> None:
    raise SystemExit(main())
