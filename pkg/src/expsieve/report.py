"""CSV/JSON rendering and checksummed, atomically written artifacts."""

from __future__ import annotations

import hashlib
import json
import math
import os
from pathlib import Path
from typing import Iterable, Sequence

CSV_VERSION = 1


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering for every numeric cell."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def atomic_write(path: str | Path, data: bytes | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode()
    tmp = path.with_name(f".{path.name}.tmp")
    with open(tmp, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
    return path


def render_csv(kind: str, columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [f"# expsieve {kind} v{CSV_VERSION}", ",".join(columns)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, kind: str, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    return atomic_write(path, render_csv(kind, columns, rows))


def _jsonable(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _jsonable(obj.item())
    return obj


def render_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, obj) -> Path:
    return atomic_write(path, render_json(obj))


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()
