"""Channel files, CSV result rows and a dependency-free SVG line chart."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import astuple, dataclass, fields
from xml.sax.saxutils import escape

import numpy as np

from .core import Channel, InvalidInputError

__all__ = ["ChannelFileError", "ResultRow", "CSV_COLUMNS", "read_channel_file",
           "dumps_channel", "write_channel_file", "format_rows",
           "sweep_rows", "render_svg"]


class ChannelFileError(InvalidInputError):
    """Malformed channel document (bad JSON, wrong shapes, non-finite)."""


def _matrix(doc, key, required):
    raw = doc.get(key)
    if raw is None or (isinstance(raw, list) and len(raw) == 0):
        if required:
            raise ChannelFileError(f"missing matrix {key!r}")
        return np.zeros((0, 2))
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ChannelFileError(f"{key!r} must be a list of rows")
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ChannelFileError(f"{key!r}: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ChannelFileError(f"{key!r} must have 2 columns, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ChannelFileError(f"{key!r} has non-finite entries")
    return arr


def parse_channel(text: str):
    """
    Parse a channel document::

        {"H": [[2, 0], [0, 1]], "G": [[0, 0], [0, 2]], "P": 1}

    ``G`` may be absent or empty (no eavesdropper); ``P`` is optional.
    Returns ``(channel, p_or_None)``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelFileError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ChannelFileError("top level must be an object")
    h = _matrix(doc, "H", required=True)
    g = _matrix(doc, "G", required=False)
    p = doc.get("P")
    if p is not None and (isinstance(p, bool) or not isinstance(p, (int, float))):
        raise ChannelFileError("'P' must be a number")
    return Channel(h, g), (None if p is None else float(p))


def read_channel_file(path):
    """Read and parse a channel file; ``OSError`` propagates."""
    with open(path, encoding="utf-8") as fh:
        return parse_channel(fh.read())


def dumps_channel(ch: Channel, p_total=None) -> str:
    # json writes floats with repr, which round-trips exactly.
    def rows(m):
        return "[" + ", ".join(json.dumps(r) for r in m.tolist()) + "]"

    lines = [f'  "H": {rows(ch.h_matrix)}', f'  "G": {rows(ch.g_matrix)}']
    if p_total is not None:
        lines.append(f'  "P": {json.dumps(float(p_total))}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_channel_file(path, ch: Channel, p_total=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_channel(ch, p_total))


@dataclass(frozen=True)
class ResultRow:
    method: str
    p_linear: float
    p_db: float
    rate_bits: float
    theta: float | None = None
    lambda1: float | None = None
    lambda2: float | None = None
    trials: int = 1
    stderr: float | None = None

    @classmethod
    def at_power(cls, method, p_linear, rate_bits, **kw):
        p_db = 10 * math.log10(p_linear) if p_linear > 0 else -math.inf
        return cls(method, float(p_linear), p_db, float(rate_bits), **kw)


CSV_COLUMNS = tuple(f.name for f in fields(ResultRow))


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.12g}"


def format_rows(rows) -> str:
    """CSV text with a fixed header and 12 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(v) for v in astuple(row)])
    return buf.getvalue()


def sweep_rows(result, label=None):
    """One row per (method, power) of a ``SweepResult``."""
    rows = []
    for i, method in enumerate(result.methods):
        name = method if label is None else f"{method}[{label}]"
        for j, p in enumerate(result.powers):
            rows.append(ResultRow.at_power(
                name, p, result.mean[i, j], trials=result.trials,
                stderr=result.stderr[i, j]))
    return rows


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf")


def _ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def render_svg(series, title="Secrecy rate versus power",
               xlabel="total power P (dB)", ylabel="mean secrecy rate (bits)",
               width=640, height=420) -> str:
    """
    Line chart as a standalone SVG string.

    ``series`` is a list of ``(name, xs, ys)``; one polyline per entry,
    legend in the top-left corner. No external resources are referenced.
    """
    left, right, top, bottom = 70, 20, 40, 55
    pw, ph = width - left - right, height - top - bottom
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    x0, x1 = (min(xs_all), max(xs_all)) if xs_all else (0.0, 1.0)
    y0, y1 = 0.0, (max(ys_all) * 1.05 if ys_all and max(ys_all) > 0 else 1.0)
    if x1 <= x0:
        x0, x1 = x0 - 1.0, x1 + 1.0

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{sx(t):.2f}" y1="{top + ph}" x2="{sx(t):.2f}" '
                   f'y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{top + ph + 18}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{left - 5}" y1="{sy(t):.2f}" x2="{left}" '
                   f'y2="{sy(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(t) + 4:.2f}" '
                   f'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{t:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" '
               f'text-anchor="middle" font-family="sans-serif" '
               f'font-size="13">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">'
               f'{escape(ylabel)}</text>')
    for k, (name, xs, ys) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="2"/>')
        ly = top + 16 + 18 * k
        out.append(f'<line x1="{left + 10}" y1="{ly}" x2="{left + 34}" '
                   f'y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + 40}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
