"""Figures for approximation and error curves.

``PlotDocument.to_svg`` writes a dependency-free SVG with one ``<polyline>``
per series; ``render_png`` draws the same document with matplotlib.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

import numpy as np

# black for the target function, then enough distinct hues for example 3 (1 + 12 series)
PALETTE = (
    "#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
    "#e377c2", "#7f7f7f", "#bcbd22", "#393b79", "#ad494a", "#637939", "#843c39", "#7b4173",
)

WIDTH, HEIGHT = 720, 450
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 170, 40, 50


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(path, header, columns) -> None:
    """Write equal-length columns under ``header`` with lossless float formatting."""
    path = Path(path)
    rows = zip(*columns)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(v) for v in row])


def read_csv(path):
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    cols = list(zip(*rows)) if rows else [() for _ in header]
    return header, {h: np.array(c) for h, c in zip(header, cols)}


@dataclass
class PlotDocument:
    title: str
    series: list = field(default_factory=list)  # (label, xs, ys)
    x_label: str = "x"
    y_label: str = ""

    def add(self, label, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape != ys.shape:
            raise ValueError("series coordinates must have matching shapes")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError(f"series {label!r} has non-finite points")
        self.series.append((label, xs, ys))
        return self

    def ranges(self):
        xs = np.concatenate([s[1] for s in self.series])
        ys = np.concatenate([s[2] for s in self.series])
        return _pad(xs.min(), xs.max()), _pad(ys.min(), ys.max())

    def to_svg(self) -> str:
        (x0, x1), (y0, y1) = self.ranges()
        pw = WIDTH - MARGIN_L - MARGIN_R
        ph = HEIGHT - MARGIN_T - MARGIN_B

        def sx(v):
            return MARGIN_L + (v - x0) / (x1 - x0) * pw

        def sy(v):
            return MARGIN_T + (y1 - v) / (y1 - y0) * ph

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{MARGIN_L + pw / 2:.1f}" y="{MARGIN_T - 15}" text-anchor="middle" '
            f'font-size="14">{escape(self.title)}</text>',
            f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
            'fill="none" stroke="#444"/>',
        ]
        for t in _ticks(x0, x1):
            px = sx(t)
            out.append(f'<line x1="{px:.2f}" y1="{MARGIN_T + ph}" x2="{px:.2f}" '
                       f'y2="{MARGIN_T + ph + 5}" stroke="#444"/>')
            out.append(f'<text x="{px:.2f}" y="{MARGIN_T + ph + 18}" '
                       f'text-anchor="middle">{_label(t)}</text>')
        for t in _ticks(y0, y1):
            py = sy(t)
            out.append(f'<line x1="{MARGIN_L - 5}" y1="{py:.2f}" x2="{MARGIN_L}" '
                       f'y2="{py:.2f}" stroke="#444"/>')
            out.append(f'<text x="{MARGIN_L - 8}" y="{py + 4:.2f}" '
                       f'text-anchor="end">{_label(t)}</text>')
        out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 10}" '
                   f'text-anchor="middle">{escape(self.x_label)}</text>')
        if self.y_label:
            out.append(f'<text x="15" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
                       f'transform="rotate(-90 15 {MARGIN_T + ph / 2:.1f})">'
                       f'{escape(self.y_label)}</text>')
        for i, (label, xs, ys) in enumerate(self.series):
            color = PALETTE[i % len(PALETTE)]
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(xs, ys))
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                       f'points="{pts}"><title>{escape(label)}</title></polyline>')
            ly = MARGIN_T + 10 + 18 * i
            lx = WIDTH - MARGIN_R + 15
            out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" '
                       f'stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{lx + 30}" y="{ly + 4}" data-series={quoteattr(label)}>'
                       f'{escape(label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write_svg(self, path) -> Path:
        path = Path(path)
        path.write_text(self.to_svg())
        return path


def render_png(doc: PlotDocument, path, dpi: int = 120) -> Path:
    """Draw ``doc`` with matplotlib into a PNG file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for i, (label, xs, ys) in enumerate(doc.series):
        ax.plot(xs, ys, color=PALETTE[i % len(PALETTE)], lw=1.4, label=label)
    (x0, x1), (y0, y1) = doc.ranges()
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_title(doc.title)
    ax.set_xlabel(doc.x_label)
    if doc.y_label:
        ax.set_ylabel(doc.y_label)
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def _pad(lo, hi):
    lo, hi = float(lo), float(hi)
    if hi - lo < 1e-12 * max(1.0, abs(lo), abs(hi)):
        d = max(abs(lo) * 0.05, 1e-3)
        return lo - d, hi + d
    return lo, hi


def _ticks(lo, hi, target=5):
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / target))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= target + 1:
            step *= mult
            break
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _label(v):
    return f"{v:.6g}"
