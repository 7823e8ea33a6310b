"""Byte-stable JSON and CSV emission with exact rationals."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if hasattr(x, "item") and callable(x.item):   # numpy scalars
        return x.item()
    return x


def _cell(x) -> str:
    if isinstance(x, Fraction):
        return f"{float(x):.12f}"
    if isinstance(x, float):
        return f"{x:.12f}"
    if x is None:
        return ""
    return str(x)


def write_report(data, fmt: str = "json", columns=None) -> bytes:
    """Serialise ``data``.

    JSON: rationals as ``"p/q"`` strings, keys sorted. CSV: ``data`` is a list
    of row dicts; rationals and floats are written with 12 decimals.
    """
    if fmt == "json":
        if data is None:
            data = {}
        return (json.dumps(_jsonable(data), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        rows = list(data or [])
        if not rows:
            return b""
        columns = list(columns or rows[0].keys())
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")
