"""Atomic, self-describing result files.

Every file opens with ``# key = value`` metadata lines echoing the
resolved configuration and the package version, so an output can be
reproduced from the file alone.  Numeric fields use 12 significant
digits; identical configurations therefore produce byte-identical files.
Writes go to a temporary file in the target directory and are renamed
into place, so an interrupted run never leaves a partial file.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .errors import DomainError

FLOAT_FORMAT = "%.12g"


def format_value(x) -> str:
    if isinstance(x, (bool, int, str)):
        return str(x)
    return FLOAT_FORMAT % x


def atomic_write_text(path: str, text: str) -> None:
    target = os.path.abspath(path)
    parent = os.path.dirname(target)
    os.makedirs(parent, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".wignerlab-", dir=parent, text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def csv_text(meta: dict, columns, rows) -> str:
    lines = [f"# {key} = {format_value(val)}" for key, val in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str, meta: dict, columns, rows) -> None:
    atomic_write_text(path, csv_text(meta, columns, rows))


def read_csv(path: str):
    """(meta, columns, float array); malformed content raises DomainError."""
    meta: dict = {}
    columns = None
    data = []
    try:
        with open(path) as handle:
            for raw in handle:
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, val = line[1:].partition("=")
                    meta[key.strip()] = val.strip()
                    continue
                cells = line.split(",")
                if columns is None:
                    columns = cells
                    continue
                if len(cells) != len(columns):
                    raise DomainError(f"row width {len(cells)} != header width")
                data.append([float(c) for c in cells])
    except (OSError, ValueError) as exc:
        raise DomainError(f"unreadable table file {path}: {exc}") from exc
    if columns is None:
        raise DomainError(f"no header row in {path}")
    return meta, columns, np.array(data, dtype=float)


def write_json(path: str, payload: dict) -> None:
    atomic_write_text(path, json_text(payload))


def json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


_TW_COLUMNS = ["s", "q", "F1", "F2"]


def tw_table_rows(table):
    return zip(table.s, table.q, table.f1, table.f2)


def load_tw_table(path: str):
    """Read and structurally validate a distribution-table CSV.

    Returns (meta, s, q, f1, f2).  Anything that breaks the table's
    defining invariants, a non-uniform grid, values outside [0, 1], or a
    non-monotone distribution column, raises DomainError: a corrupted
    table must be rebuilt, never trusted.
    """
    meta, columns, data = read_csv(path)
    if columns != _TW_COLUMNS:
        raise DomainError(f"expected columns {_TW_COLUMNS}, found {columns}")
    if len(data) < 3:
        raise DomainError("table has fewer than three rows")
    s, q, f1, f2 = data.T
    if not np.all(np.isfinite(data)):
        raise DomainError("non-finite table entry")
    steps = np.diff(s)
    if steps.min() <= 0.0 or steps.max() - steps.min() > 1e-9:
        raise DomainError("grid is not uniformly increasing")
    for name, col in (("F1", f1), ("F2", f2)):
        if col.min() < 0.0 or col.max() > 1.0:
            raise DomainError(f"{name} leaves [0, 1]")
        if np.any(np.diff(col) < -1e-9):
            raise DomainError(f"{name} is not monotone")
    if np.any(q < 0.0):
        raise DomainError("q column has a negative entry")
    return meta, s, q, f1, f2
