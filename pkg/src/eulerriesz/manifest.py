"""Run manifests: a JSON sidecar describing what produced a series file."""

from __future__ import annotations

import json
from importlib.metadata import PackageNotFoundError, version

from .config import SimConfig, dump_config


def _package_version() -> str:
    try:
        return version("eulerriesz")
    except PackageNotFoundError:
        return "unknown"


def build_manifest(
    cfg: SimConfig,
    status: str,
    t_final: float,
    n_steps: int,
    n_records: int,
    wall_seconds: float,
    csv_path: str,
    checkpoint_path: str | None,
    extra: dict | None = None,
) -> dict:
    doc = {
        "package": "eulerriesz",
        "version": _package_version(),
        "status": status,
        "t_final": t_final,
        "steps": n_steps,
        "records": n_records,
        "wall_seconds": wall_seconds,
        "series_path": csv_path,
        "checkpoint_path": checkpoint_path,
        "config_text": dump_config(cfg),
    }
    if extra:
        doc.update(extra)
    return doc


def write_manifest(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
