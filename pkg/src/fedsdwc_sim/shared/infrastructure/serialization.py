"""Canonical JSON / NDJSON writers for byte-reproducible artifacts."""

import json
import math
from collections.abc import Mapping
from enum import Enum
from pathlib import Path
from typing import IO, Any

import numpy as np
import torch

SIGNIFICANT_DIGITS = 9


def _canonical(value: Any) -> Any:
    """Convert a value into plain JSON types with floats at 9 significant digits."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Enum):
        return _canonical(value.value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        number = float(value)
        if not math.isfinite(number):
            raise ValueError(f"non-finite float {number!r} cannot be serialized")
        return float(f"{number:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, torch.Tensor):
        return _canonical(value.detach().cpu().tolist())
    if isinstance(value, np.ndarray):
        return _canonical(value.tolist())
    if isinstance(value, Path):
        return value.as_posix()
    if isinstance(value, Mapping):
        return {str(key): _canonical(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [_canonical(item) for item in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_canonical(value: Any, indent: int | None = 2) -> str:
    """Serialize to JSON with sorted keys and rounded floats."""
    return json.dumps(
        _canonical(value), sort_keys=True, indent=indent, ensure_ascii=False, allow_nan=False
    )


def write_json(path: Path, value: Any) -> Path:
    """Write canonical JSON (UTF-8, trailing newline) and return the path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_canonical(value) + "\n", encoding="utf-8")
    return path


def read_json(path: Path) -> Any:
    """Read a JSON document."""
    return json.loads(path.read_text(encoding="utf-8"))


class NdjsonWriter:
    """Append-only newline-delimited JSON file, flushed after every record."""

    def __init__(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        self._path = path
        self._handle: IO[str] = path.open("w", encoding="utf-8")

    @property
    def path(self) -> Path:
        return self._path

    def write(self, record: Mapping[str, Any]) -> None:
        self._handle.write(dumps_canonical(record, indent=None) + "\n")
        self._handle.flush()

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "NdjsonWriter":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
