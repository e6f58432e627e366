"""Deterministic CSV / JSON serialization of tabular reports.

Floats are written with 17 significant digits. A complex scalar under key
``k`` becomes CSV columns ``re_k, im_k``; a complex vector becomes
``re_0, im_0, re_1, im_1, ...``. In JSON a complex number is ``[re, im]``.
"""
from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Report", "emit", "render"]


@dataclass
class Report:
    command: str
    columns: list
    records: list = field(default_factory=list)

    def add(self, **values):
        missing = [c for c in self.columns if c not in values]
        if missing:
            raise KeyError(f"record is missing columns {missing}")
        self.records.append({c: values[c] for c in self.columns})


def _fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def _is_vector(v) -> bool:
    return isinstance(v, (list, tuple, np.ndarray))


def _csv_header(report: Report) -> list:
    first = report.records[0] if report.records else {}
    header = []
    for col in report.columns:
        v = first.get(col)
        if _is_vector(v):
            for k in range(len(v)):
                header += [f"re_{k}", f"im_{k}"]
        elif isinstance(v, (complex, np.complexfloating)):
            header += [f"re_{col}", f"im_{col}"]
        else:
            header.append(col)
    return header


def _csv_cells(v) -> list:
    if _is_vector(v):
        out = []
        for z in v:
            z = complex(z)
            out += [_fmt_float(z.real), _fmt_float(z.imag)]
        return out
    if isinstance(v, (complex, np.complexfloating)):
        return [_fmt_float(v.real), _fmt_float(v.imag)]
    if isinstance(v, (bool, np.bool_)):
        return [str(bool(v)).lower()]
    if isinstance(v, (int, np.integer)):
        return [str(int(v))]
    if isinstance(v, (float, np.floating)):
        return [_fmt_float(v)]
    return [str(v)]


def _json(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return f"[{_fmt_float(v.real)}, {_fmt_float(v.imag)}]"
    if isinstance(v, str):
        return _json_str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{_json_str(str(k))}: {_json(x)}" for k, x in v.items()) + "}"
    if _is_vector(v):
        return "[" + ", ".join(_json(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _json_str(s: str) -> str:
    import json

    return json.dumps(s)


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_csv_header(report))
        for rec in report.records:
            w.writerow([cell for col in report.columns for cell in _csv_cells(rec[col])])
        return buf.getvalue()
    if fmt == "json":
        body = {"command": report.command, "columns": list(report.columns),
                "records": report.records}
        return _json(body) + "\n"
    raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def emit(report: Report, fmt: str = "csv", path=None) -> None:
    """Write a report to ``path``, or to standard output when path is None or '-'."""
    text = render(report, fmt)
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
