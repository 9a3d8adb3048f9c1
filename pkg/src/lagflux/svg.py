"""Minimal deterministic SVG line plots of snapshot profiles."""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .io import read_csv_columns

WIDTH, HEIGHT = 480, 320
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 28, 40

PANELS = [
    ("rho", "density", "rho_ref"),
    ("u", "velocity", "u_ref"),
    ("p", "pressure", "p_ref"),
    ("Pi", "entropy production", None),
]


def _nice_step(span, target=5):
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            return m * mag
    return 10.0 * mag


def _ticks(lo, hi):
    step = _nice_step(hi - lo)
    start = math.ceil(lo / step - 1e-9) * step
    out = []
    v = start
    while v <= hi + 1e-9 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def _range(*arrays):
    vals = np.concatenate([np.asarray(a, dtype=float).ravel() for a in arrays])
    vals = vals[np.isfinite(vals)]
    lo, hi = (float(vals.min()), float(vals.max())) if vals.size else (0.0, 1.0)
    if hi - lo <= 1e-12 * max(1.0, abs(hi)):
        pad = 0.5 * abs(hi) if hi != 0.0 else 1.0
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def line_plot_svg(x, ys, title, styles=None) -> str:
    """SVG document for one panel; ``ys`` is a list of curves sharing ``x``."""
    x = np.asarray(x, dtype=float)
    x0, x1 = (float(x.min()), float(x.max())) if x.size > 1 else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    y0, y1 = _range(*ys)
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN_T + (y1 - v) / (y1 - y0) * ph

    styles = styles or ['stroke="#1f4e9c" stroke-width="1.2"', 'stroke="#c0392b" stroke-width="1" stroke-dasharray="4 3"']
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="18" text-anchor="middle" font-family="sans-serif" font-size="13">{escape(title)}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="0.8"/>',
    ]
    for t in _ticks(x0, x1):
        X = sx(t)
        out.append(f'<line x1="{X:.2f}" y1="{MARGIN_T + ph}" x2="{X:.2f}" y2="{MARGIN_T + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{MARGIN_T + ph + 16}" text-anchor="middle" font-family="sans-serif" font-size="10">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        Y = sy(t)
        out.append(f'<line x1="{MARGIN_L - 4}" y1="{Y:.2f}" x2="{MARGIN_L}" y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 6}" y="{Y + 3:.2f}" text-anchor="end" font-family="sans-serif" font-size="10">{t:.3g}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.2f}" y="{HEIGHT - 6}" text-anchor="middle" font-family="sans-serif" font-size="11">x</text>')
    for i, y in enumerate(ys):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, np.asarray(y, dtype=float)) if math.isfinite(b))
        out.append(f'<polyline class="curve-{i}" fill="none" {styles[i % len(styles)]} points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_plots(path_prefix, snapshot_csv) -> list:
    """Write density, velocity, pressure and Pi panels next to ``path_prefix``.

    Reference profiles are overlaid when the CSV carries them.
    """
    data = read_csv_columns(snapshot_csv)
    prefix = Path(path_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for col, label, ref in PANELS:
        ys = [data[col]]
        if ref is not None and ref in data:
            ys.append(data[ref])
        path = prefix.parent / f"{prefix.name}_{col}.svg"
        path.write_text(line_plot_svg(data["x"], ys, label))
        written.append(path)
    return written
