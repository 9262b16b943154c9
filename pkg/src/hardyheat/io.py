"""CSV, JSON and SVG writers with locale-independent, reproducible formatting."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np


def fmt(x) -> str:
    """repr-style float text (shortest round-trip), independent of locale."""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else fmt(x)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def curve_rows(t, values, uncertainty):
    return zip(np.asarray(t).tolist(), np.asarray(values).tolist(), np.asarray(uncertainty).tolist())


CURVE_COLUMNS = ("t", "value", "abs_uncertainty")


def write_curve_csv(path, t, values, uncertainty) -> Path:
    return write_csv(path, CURVE_COLUMNS, curve_rows(t, values, uncertainty))


def write_field_csv(path, points, values, name="value") -> Path:
    points = np.asarray(points)
    header = [f"x{i + 1}" for i in range(points.shape[1])] + [name]
    rows = (list(p) + [v] for p, v in zip(points.tolist(), np.asarray(values).tolist()))
    return write_csv(path, header, rows)


def write_reports_csv(path, reports) -> Path:
    from .bounds.report import CSV_COLUMNS

    return write_csv(path, CSV_COLUMNS, (r.csv_row() for r in reports))


def svg_loglog(path, series, title="", xlabel="t", ylabel="value", width=640, height=420) -> Path:
    """Self-contained SVG line plot on log-log axes.

    ``series`` is a list of ``(label, x, y)``; nonpositive points are dropped.
    """
    pad_l, pad_r, pad_t, pad_b = 70, 20, 30, 50
    clean = []
    for label, x, y in series:
        x, y = np.asarray(x, float), np.asarray(y, float)
        ok = (x > 0) & (y > 0) & np.isfinite(x) & np.isfinite(y)
        clean.append((label, np.log10(x[ok]), np.log10(y[ok])))
    allx = np.concatenate([c[1] for c in clean]) if clean else np.array([0.0])
    ally = np.concatenate([c[2] for c in clean]) if clean else np.array([0.0])
    if allx.size == 0:
        allx = ally = np.array([0.0])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1
    pw, ph = width - pad_l - pad_r, height - pad_t - pad_b

    def sx(v):
        return pad_l + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return pad_t + ph - (v - y0) / (y1 - y0) * ph

    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad_l}" y1="{pad_t + ph}" x2="{pad_l + pw}" y2="{pad_t + ph}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{pad_t + ph}" stroke="black"/>',
        f'<text x="{pad_l + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">log10 {xlabel}</text>',
        f'<text x="15" y="{pad_t + ph / 2:.1f}" transform="rotate(-90 15 {pad_t + ph / 2:.1f})" text-anchor="middle">log10 {ylabel}</text>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle">{title}</text>',
    ]
    for k in range(5):
        xv, yv = x0 + (x1 - x0) * k / 4, y0 + (y1 - y0) * k / 4
        out.append(f'<text x="{sx(xv):.1f}" y="{pad_t + ph + 16}" text-anchor="middle">{xv:.2f}</text>')
        out.append(f'<text x="{pad_l - 6}" y="{sy(yv) + 4:.1f}" text-anchor="end">{yv:.2f}</text>')
    for i, (label, lx, ly) in enumerate(clean):
        color = colors[i % len(colors)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(lx, ly))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{pad_l + 10}" y="{pad_t + 16 * (i + 1)}" fill="{color}">{label}</text>')
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
