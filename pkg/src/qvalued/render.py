"""Standalone SVG drawing of a planar instance (m = n = 2).

Left panel: anchor points and the extension point. Right panel: the atoms of
each anchor's value and of the extension candidate. Each anchor, and the
candidate, is one ``<g class="glyph">`` spanning both panels.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .errors import DimensionMismatchError

PALETTE = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#7f7f7f", "#bcbd22"]
HIGHLIGHT = "#d62728"
PANEL = 100.0
GAP = 20.0


def _frame(coords):
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    span = max(float((hi - lo).max()), 1e-9)
    lo = lo - 0.1 * span
    span *= 1.2
    return lo, span


def _mapper(coords, x_offset):
    lo, span = _frame(coords)

    def to_svg(pt):
        x = x_offset + (pt[0] - lo[0]) / span * PANEL
        y = PANEL - (pt[1] - lo[1]) / span * PANEL
        return x, y
    return to_svg


def _fmt(v):
    return f"{v:.4f}"


def render_svg(fmap, point=None, candidate=None, title=None):
    """SVG text for ``fmap``; ``candidate`` (a QConfig) is drawn at ``point``."""
    if fmap.m != 2 or fmap.n != 2:
        raise DimensionMismatchError(
            f"only m = n = 2 can be rendered, got m = {fmap.m}, n = {fmap.n}")
    dom = fmap.points if point is None else np.vstack([fmap.points, point])
    cod = fmap.values.reshape(-1, 2)
    if candidate is not None:
        cod = np.vstack([cod, candidate.atoms])
    left = _mapper(dom, 0.0)
    right = _mapper(cod, PANEL + GAP)
    width = 2 * PANEL + GAP

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(PANEL)}" width="{int(4 * width)}" height="{int(4 * PANEL)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect class="panel" x="0" y="0" width="{_fmt(PANEL)}" height="{_fmt(PANEL)}" '
               'fill="none" stroke="#cccccc" stroke-width="0.3"/>')
    out.append(f'<rect class="panel" x="{_fmt(PANEL + GAP)}" y="0" width="{_fmt(PANEL)}" '
               f'height="{_fmt(PANEL)}" fill="none" stroke="#cccccc" stroke-width="0.3"/>')
    for i in range(fmap.k):
        color = PALETTE[i % len(PALETTE)]
        x, y = left(fmap.points[i])
        out.append(f'<g class="glyph" id="anchor-{i}" fill="{color}" stroke="{color}">')
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2"/>')
        out.append(f'<text x="{_fmt(x + 2.5)}" y="{_fmt(y - 2.5)}" font-size="5" stroke="none">x{i}</text>')
        for atom in fmap.values[i]:
            ax, ay = right(atom)
            out.append(f'<rect x="{_fmt(ax - 1.5)}" y="{_fmt(ay - 1.5)}" width="3" height="3"/>')
        out.append("</g>")
    if point is not None and candidate is not None:
        x, y = left(point)
        out.append(f'<g class="glyph" id="extension" fill="none" stroke="{HIGHLIGHT}" stroke-width="0.8">')
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5"/>')
        for atom in candidate.atoms:
            ax, ay = right(atom)
            out.append(f'<circle cx="{_fmt(ax)}" cy="{_fmt(ay)}" r="2.5"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
