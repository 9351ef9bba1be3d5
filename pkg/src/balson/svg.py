"""Minimal self-contained SVG emission: polyline charts and box plots.

No external renderer; coordinates are formatted to fixed precision so the
output bytes are reproducible.
"""

from __future__ import annotations

import numpy as np

WIDTH = 720
HEIGHT = 440
MARGIN = 60
PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


def _scale(values, lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0
    return out_lo + (np.asarray(values, dtype=np.float64) - lo) * (out_hi - out_lo) / span


def _axes(x_lo, x_hi, y_lo, y_hi, title):
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" font-size="15" '
        f'font-family="sans-serif">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        px = MARGIN + frac * (WIDTH - 2 * MARGIN)
        py = HEIGHT - MARGIN - frac * (HEIGHT - 2 * MARGIN)
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        parts.append(
            f'<line x1="{px:.2f}" y1="{HEIGHT - MARGIN}" x2="{px:.2f}" '
            f'y2="{HEIGHT - MARGIN + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{xv:.3g}</text>'
        )
        parts.append(
            f'<line x1="{MARGIN - 5}" y1="{py:.2f}" x2="{MARGIN}" y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{yv:.3g}</text>'
        )
    return parts


def line_plot(path, series, title):
    """Write a polyline chart; ``series`` is a list of (label, x, y)."""
    xs = np.concatenate([np.asarray(x, dtype=np.float64) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, dtype=np.float64) for _, _, y in series])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    parts = _axes(x_lo, x_hi, y_lo, y_hi, title)
    for idx, (label, x, y) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        px = _scale(x, x_lo, x_hi, MARGIN, WIDTH - MARGIN)
        py = _scale(y, y_lo, y_hi, HEIGHT - MARGIN, MARGIN)
        points = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
        parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = MARGIN + 16 * idx
        parts.append(
            f'<line x1="{WIDTH - MARGIN - 130}" y1="{ly}" x2="{WIDTH - MARGIN - 106}" '
            f'y2="{ly}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN - 100}" y="{ly + 4}" font-size="11" '
            f'font-family="sans-serif">{label}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


def box_plot(path, groups, title):
    """Write quartile boxes with 1.5 IQR whiskers; ``groups`` is (label, values)."""
    values = np.concatenate([np.asarray(v, dtype=np.float64) for _, v in groups])
    y_lo, y_hi = float(values.min()), float(values.max())
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    parts = _axes(0.0, float(len(groups)), y_lo, y_hi, title)
    slot = (WIDTH - 2 * MARGIN) / max(len(groups), 1)
    half = min(slot * 0.3, 40.0)

    def ypix(v):
        return float(_scale([v], y_lo, y_hi, HEIGHT - MARGIN, MARGIN)[0])

    for idx, (label, raw) in enumerate(groups):
        v = np.sort(np.asarray(raw, dtype=np.float64))
        q1, med, q3 = (float(np.percentile(v, q)) for q in (25, 50, 75))
        iqr = q3 - q1
        lo = float(v[v >= q1 - 1.5 * iqr].min())
        hi = float(v[v <= q3 + 1.5 * iqr].max())
        cx = MARGIN + slot * (idx + 0.5)
        color = PALETTE[idx % len(PALETTE)]
        parts.append(
            f'<rect x="{cx - half:.2f}" y="{ypix(q3):.2f}" width="{2 * half:.2f}" '
            f'height="{ypix(q1) - ypix(q3):.2f}" fill="none" stroke="{color}"/>'
        )
        parts.append(
            f'<line x1="{cx - half:.2f}" y1="{ypix(med):.2f}" x2="{cx + half:.2f}" '
            f'y2="{ypix(med):.2f}" stroke="{color}" stroke-width="2"/>'
        )
        for tip, anchor in ((hi, q3), (lo, q1)):
            parts.append(
                f'<line x1="{cx:.2f}" y1="{ypix(anchor):.2f}" x2="{cx:.2f}" '
                f'y2="{ypix(tip):.2f}" stroke="{color}"/>'
            )
            parts.append(
                f'<line x1="{cx - half / 2:.2f}" y1="{ypix(tip):.2f}" x2="{cx + half / 2:.2f}" '
                f'y2="{ypix(tip):.2f}" stroke="{color}"/>'
            )
        for out in v[(v < q1 - 1.5 * iqr) | (v > q3 + 1.5 * iqr)]:
            parts.append(f'<circle cx="{cx:.2f}" cy="{ypix(float(out)):.2f}" r="2" fill="{color}"/>')
        parts.append(
            f'<text x="{cx:.2f}" y="{HEIGHT - MARGIN + 32}" text-anchor="middle" '
            f'font-size="10" font-family="sans-serif">{label}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")
