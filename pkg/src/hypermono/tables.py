"""Lossless CSV and JSON emission of column tables."""

from __future__ import annotations

import io
import json
import math

import numpy as np


def fmt(x) -> str:
    """17 significant digits, enough to round-trip any double."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _json_value(x):
    x = float(x)
    return x if math.isfinite(x) else fmt(x)


def to_csv(columns: dict, comments: list[str] | None = None) -> str:
    names = list(columns)
    cols = [np.asarray(columns[n], dtype=float).ravel() for n in names]
    size = {c.size for c in cols}
    if len(size) > 1:
        raise ValueError("columns differ in length")
    buf = io.StringIO(newline="")
    for line in comments or []:
        buf.write(f"# {line}\n")
    buf.write(",".join(names) + "\n")
    for row in zip(*cols):
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def to_json(columns: dict, meta: dict | None = None) -> str:
    doc = {}
    if meta:
        doc["meta"] = meta
    doc["columns"] = {n: [_json_value(x) for x in np.asarray(c, dtype=float).ravel()]
                      for n, c in columns.items()}
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def parse_csv(text: str) -> dict[str, np.ndarray]:
    lines = [ln for ln in text.split("\n") if ln and not ln.startswith("#")]
    names = lines[0].split(",")
    rows = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    data = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return {n: data[:, i] for i, n in enumerate(names)}
