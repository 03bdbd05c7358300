"""Deterministic text output and input for CLI and scripts.

Every floating-point number is rendered with 17 significant digits, so a
fixed configuration always yields byte-identical files.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

FLOAT_FORMAT = ".17g"


def fmt_float(value: float) -> str:
    return format(float(value), FLOAT_FORMAT)


def _render_json(obj, level: int) -> str:
    pad = "  " * level
    inner = "  " * (level + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(key))}: {_render_json(obj[key], level + 1)}"
            for key in sorted(obj)
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        parts = [f"{inner}{_render_json(item, level + 1)}" for item in obj]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed float formatting, trailing newline."""
    return _render_json(obj, 0) + "\n"


def _fmt_cell(cell) -> str:
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    if isinstance(cell, (float, np.floating)):
        return fmt_float(cell)
    return str(cell)


def csv_text(header: str, rows: Iterable[Sequence]) -> str:
    lines = [header]
    lines.extend(",".join(_fmt_cell(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def matrix_csv_text(entries: np.ndarray) -> str:
    """Row-major dump of a complex matrix, header ``n,m,re,im``."""
    n_rows, n_cols = entries.shape
    rows = (
        (n, m, entries[n, m].real, entries[n, m].imag)
        for n in range(n_rows)
        for m in range(n_cols)
    )
    return csv_text("n,m,re,im", rows)


def vector_csv_text(values: np.ndarray) -> str:
    rows = ((k, v.real, v.imag) for k, v in enumerate(values))
    return csv_text("k,re,im", rows)


def read_vector_csv(path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        raise ValueError(f"{path}: no vector entries")
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected columns k,re,im")
    if not np.array_equal(data[:, 0], np.arange(data.shape[0])):
        raise ValueError(f"{path}: vector indices must run 0..N-1 in order")
    return data[:, 1] + 1j * data[:, 2]


def read_matrix_csv(path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        raise ValueError(f"{path}: no matrix entries")
    if data.shape[1] != 4:
        raise ValueError(f"{path}: expected columns n,m,re,im")
    size = int(data[:, :2].max()) + 1
    if data.shape[0] != size * size:
        raise ValueError(f"{path}: expected {size * size} entries for an {size}x{size} matrix")
    out = np.zeros((size, size), dtype=complex)
    out[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return out


def write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
