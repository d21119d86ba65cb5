"""CSV and JSON formats for points, matrices, values, and reports.

Conventions: UTF-8, comma separator, `.` decimal point.  Point files
carry a header row naming the domain tag; raw matrices have no header.
Complex numbers are written as `re,im` column pairs in CSV and as
[re, im] pairs in JSON.  JSON reports are schema-versioned under
"kernel-forge/1" and serialized with sorted keys so identical runs
produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .kernels import IntervalSet, SampleSet

SCHEMA = "kernel-forge/1"

_SCALAR_TAGS = ("real-line", "unit-interval")


def _parse_float(text: str) -> float:
    return float(text.strip())


def read_points(path: str) -> SampleSet:
    """Read a point set: header row = domain tag, one point per row.

    real-line / unit-interval: one column.  complex-disk: two columns
    (re, im).  complex-vector(d): 2d columns.  interval-set: an even
    number of columns per row, consecutive pairs forming disjoint
    intervals.
    """
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty point file")
    tag = rows[0].strip().strip(",")
    body = rows[1:]
    points = []
    if tag in _SCALAR_TAGS:
        points = [_parse_float(r.split(",")[0]) for r in body]
    elif tag == "complex-disk":
        for r in body:
            re, im = (p for p in r.split(","))
            points.append(complex(_parse_float(re), _parse_float(im)))
    elif tag.startswith("complex-vector"):
        for r in body:
            cols = [_parse_float(p) for p in r.split(",")]
            if len(cols) % 2:
                raise ValueError(f"{path}: complex vectors need re,im column pairs")
            points.append(
                np.array([complex(a, b) for a, b in zip(cols[0::2], cols[1::2])])
            )
    elif tag == "interval-set":
        for r in body:
            cols = [_parse_float(p) for p in r.split(",")]
            if len(cols) % 2:
                raise ValueError(f"{path}: interval sets need lo,hi column pairs")
            points.append(
                IntervalSet(tuple(zip(cols[0::2], cols[1::2])))
            )
    else:
        raise ValueError(f"{path}: unknown domain tag {tag!r}")
    return SampleSet(points=points, domain=tag)


def write_points(path: str, sample: SampleSet) -> None:
    tag = sample.domain or "real-line"
    lines = [tag]
    for p in sample.points:
        if isinstance(p, IntervalSet):
            flat = [v for pair in p.intervals for v in pair]
            lines.append(",".join(repr(float(v)) for v in flat))
        else:
            arr = np.asarray(p)
            if arr.ndim == 0:
                val = complex(arr)
                if tag in _SCALAR_TAGS:
                    lines.append(repr(float(val.real)))
                else:
                    lines.append(f"{val.real!r},{val.imag!r}")
            else:
                parts = []
                for v in arr.ravel():
                    c = complex(v)
                    parts.extend((repr(c.real), repr(c.imag)))
                lines.append(",".join(parts))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_values(path: str) -> np.ndarray:
    """Sample values: one column of reals, or re,im pairs for complex."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    parsed = [[_parse_float(c) for c in r.split(",")] for r in rows]
    widths = {len(p) for p in parsed}
    if widths == {1}:
        return np.array([p[0] for p in parsed])
    if widths == {2}:
        return np.array([complex(a, b) for a, b in parsed])
    raise ValueError(f"{path}: value rows must have one column or re,im pairs")


def read_matrix(path: str) -> np.ndarray:
    """Raw matrix CSV (no header); complex entries as re+imj literals."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    data = []
    is_complex = False
    for r in rows:
        vals = []
        for cell in r.split(","):
            cell = cell.strip().strip("()")
            try:
                vals.append(float(cell))
            except ValueError:
                vals.append(complex(cell))
                is_complex = True
        data.append(vals)
    return np.array(data, dtype=complex if is_complex else float)


def format_matrix(arr: np.ndarray) -> str:
    """Matrix as headerless CSV text; complex entries as re+imj literals."""
    lines = []
    for row in np.atleast_2d(arr):
        cells = []
        for v in row:
            if np.iscomplexobj(arr):
                c = complex(v)
                cells.append(f"{c.real!r}{c.imag:+}j".replace("+-", "-"))
            else:
                cells.append(repr(float(v)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_matrix(path: str, arr: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(arr))


def read_chain(path: str):
    """Chain file: one level per row, comma-separated real points."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    if rows and rows[0].strip(",") in _SCALAR_TAGS:
        rows = rows[1:]
    levels = [[_parse_float(c) for c in r.split(",")] for r in rows]
    if not levels:
        raise ValueError(f"{path}: empty chain file")
    return levels


def json_value(v):
    """Recursively convert numerics for JSON: complex -> [re, im]."""
    if isinstance(v, dict):
        return {k: json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [json_value(x) for x in v]
    if isinstance(v, IntervalSet):
        return [list(pair) for pair in v.intervals]
    if isinstance(v, np.ndarray):
        return [json_value(x) for x in v.tolist()]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.complexfloating, complex)):
        c = complex(v)
        return [c.real, c.imag]
    return v


def matrix_json(arr: np.ndarray, points=None) -> dict:
    doc = {
        "n": int(arr.shape[0]),
        "entries": [json_value(v) for v in np.asarray(arr).ravel().tolist()],
    }
    if points is not None:
        doc["points"] = [json_value(p) for p in points]
    return doc


def render_report(command: str, config: dict, payload: dict, seed=None) -> str:
    """Schema-versioned JSON report with deterministic serialization."""
    doc = {"schema": SCHEMA, "command": command, "config": json_value(config)}
    if seed is not None:
        doc["seed"] = int(seed)
    doc.update(json_value(payload))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
