"""Matrix CSV files and sweep result files (CSV, JSON, SVG)."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path
from typing import Sequence

import numpy as np

from .dynamics import validate_initial
from .montecarlo import CellSummary
from .signed_graph import NotAnAppraisalMatrix, check_appraisal_matrix

RESULT_FIELDS = (
    "n_agents",
    "n_topics",
    "trials",
    "balanced",
    "vanished",
    "budget_exceeded",
    "p_hat",
    "mean_hitting_time",
)


class MatrixFormatError(ValueError):
    """Malformed matrix file: ragged rows, non-numeric cells, zero rows."""


def _read_rows(path) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    # header/comment lines may only lead the file; trailing blank lines are ignored
    while rows and rows[0] and rows[0][0].lstrip().startswith("#"):
        rows.pop(0)
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    return rows


def _parse_numeric(rows: list[list[str]], path) -> np.ndarray:
    if not rows:
        raise MatrixFormatError(f"{path}: no data rows")
    width = None
    data = []
    for lineno, row in enumerate(rows, start=1):
        if not any(cell.strip() for cell in row):
            raise MatrixFormatError(f"{path}: zero row (blank agent line {lineno})")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(f"{path}: ragged rows (line {lineno} has {len(row)} cells, expected {width})")
        try:
            values = [float(cell) for cell in row]
        except ValueError as exc:
            raise MatrixFormatError(f"{path}: non-numeric cell on data line {lineno}: {exc}") from None
        data.append(values)
    arr = np.array(data, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError(f"{path}: non-finite value")
    return arr + 0.0


def read_opinion_csv(path, allow_zero_columns: bool = False) -> np.ndarray:
    """Read an opinion matrix, one agent per line.

    Zero rows are always rejected; zero columns only unless
    ``allow_zero_columns`` is set.
    """
    Y = _parse_numeric(_read_rows(path), path)
    report = validate_initial(Y)
    if report.zero_rows:
        raise MatrixFormatError(f"{path}: zero row(s) {[i + 1 for i in report.zero_rows]}")
    if report.zero_columns and not allow_zero_columns:
        raise MatrixFormatError(f"{path}: zero column(s) {[j + 1 for j in report.zero_columns]}")
    return Y


def read_sign_csv(path) -> np.ndarray:
    """Read an appraisal matrix with entries -1, 0, 1."""
    A = _parse_numeric(_read_rows(path), path)
    try:
        return check_appraisal_matrix(A)
    except NotAnAppraisalMatrix as exc:
        raise MatrixFormatError(f"{path}: {exc}") from None


def format_opinion_csv(Y) -> str:
    return "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in np.asarray(Y, dtype=np.float64))


def format_sign_csv(X) -> str:
    return "".join(",".join(str(int(v)) for v in row) + "\n" for row in np.asarray(X))


def write_opinion_csv(Y, path) -> None:
    Path(path).write_text(format_opinion_csv(Y))


def write_sign_csv(X, path) -> None:
    Path(path).write_text(format_sign_csv(X))


def parse_inline_matrix(spec: str) -> np.ndarray:
    """Parse ``"1,0.1;2,-0.1"`` (rows separated by ';')."""
    rows = [r.split(",") for r in spec.strip().split(";")]
    return _parse_numeric(rows, "<inline>")


# -- sweep results -----------------------------------------------------------


def _num(x: float) -> str:
    return repr(float(x))


def results_csv(results: Sequence[CellSummary]) -> str:
    buf = io.StringIO()
    buf.write(",".join(RESULT_FIELDS) + "\n")
    for cell in results:
        row = cell.as_row()
        buf.write(",".join(
            _num(row[k]) if isinstance(row[k], float) else str(row[k]) for k in RESULT_FIELDS
        ) + "\n")
    return buf.getvalue()


def results_json(results: Sequence[CellSummary]) -> str:
    rows = []
    for cell in results:
        row = cell.as_row()
        rows.append({k: (None if isinstance(row[k], float) and math.isnan(row[k]) else row[k])
                     for k in RESULT_FIELDS})
    return json.dumps(rows, indent=2) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def results_svg(results: Sequence[CellSummary], width: int = 640, height: int = 420) -> str:
    """Mean hitting time against topic count, one polyline per group size."""
    by_n: dict[int, list[tuple[int, float]]] = {}
    for cell in results:
        if not math.isnan(cell.mean_hitting_time):
            by_n.setdefault(cell.n_agents, []).append((cell.n_topics, cell.mean_hitting_time))
    points = [pt for series in by_n.values() for pt in series]
    left, right, top, bottom = 70, 150, 30, 60
    pw, ph = width - left - right, height - top - bottom
    ms = [m for m, _ in points] or [1]
    ys = [y for _, y in points] or [1.0]
    x_lo, x_hi = min(ms), max(ms)
    if x_hi == x_lo:
        x_hi = x_lo + 1
    y_lo = 0.0
    y_hi = math.ceil(max(ys)) if max(ys) > 0 else 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0

    def sx(m):
        return left + (m - x_lo) / (x_hi - x_lo) * pw

    def sy(y):
        return top + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for m in sorted(set(ms)):
        x = sx(m)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{m}</text>')
    n_yticks = 5
    for k in range(n_yticks + 1):
        yv = y_lo + (y_hi - y_lo) * k / n_yticks
        y = sy(yv)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{yv:g}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 15}" text-anchor="middle">number of topics m</text>')
    out.append(
        f'<text x="18" y="{top + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + ph / 2:.2f})">mean hitting time (steps)</text>'
    )
    for idx, (n, series) in enumerate(sorted(by_n.items())):
        colour = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{sx(m):.2f},{sy(y):.2f}" for m, y in sorted(series))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2" points="{pts}"/>')
        ly = top + 10 + 20 * idx
        lx = left + pw + 20
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">N = {n}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


FORMATTERS = {"csv": results_csv, "json": results_json, "svg": results_svg}


def format_from_path(path) -> str:
    ext = os.path.splitext(str(path))[1].lower().lstrip(".")
    return ext if ext in FORMATTERS else "csv"


def write_outputs(results: Sequence[CellSummary], fmt: str, path) -> None:
    """Write sweep results as csv, json or svg. Nothing is created for empty results."""
    if not results:
        raise ValueError("no results to write")
    if fmt not in FORMATTERS:
        raise ValueError(f"unknown output format {fmt!r}")
    text = FORMATTERS[fmt](results)
    with open(path, "w", newline="") as fh:
        fh.write(text)
