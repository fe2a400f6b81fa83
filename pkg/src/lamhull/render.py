"""Deterministic SVG pictures of hull regions.

Planar coordinates are mapped isometrically into the drawing (through a
Cholesky factor of the chart's Gram matrix), so angles and lengths in the
picture are the Frobenius ones.  Every number is printed with a fixed number
of decimals, which makes the output byte-stable.
"""
from itertools import combinations

import numpy as np

from .lamination import _planar, classify_three, dedupe_points
from .regions import convex_hull_2d

WIDTH = 480.0
MARGIN = 40.0

HULL_FILL = "#f7d51d"
OUTLINE = "#555555"
SEGMENT = "#1f5fbf"
WELL = "#1a9641"
ANCHOR = "#d7191c"


def _fmt(x):
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _View:
    """Affine map from planar coordinates to SVG user units (y pointing down)."""

    def __init__(self, chart, pts):
        gram = chart.metric()
        self.factor = np.linalg.cholesky(gram).T
        xy = self._embed(np.asarray(pts, dtype=float))
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        span = float(max((hi - lo).max(), 1e-12))
        self.unit = (WIDTH - 2 * MARGIN) / span
        self.lo, self.hi = lo, hi
        self.width = WIDTH
        self.height = (hi[1] - lo[1]) * self.unit + 2 * MARGIN

    def _embed(self, p):
        return np.atleast_2d(p) @ self.factor.T

    def __call__(self, p):
        x, y = self._embed(np.asarray(p, dtype=float))[0]
        return (MARGIN + (x - self.lo[0]) * self.unit,
                MARGIN + (self.hi[1] - y) * self.unit)


def _points_attr(view, verts):
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (view(v) for v in verts))


def _anchors(pts, chart):
    if not getattr(chart, "rank_one", False):
        return []
    out = []
    for t in combinations(pts, 3):
        a = classify_three(t, chart).anchor
        if a is not None and all(abs(a[0] - b[0]) > chart.geo_tol or abs(a[1] - b[1]) > chart.geo_tol
                                 for b in out):
            out.append(a)
    return sorted(out)


def render_svg(wells, region, chart, labels=None, title=None):
    """SVG text showing ``region`` over the wells.

    The hull cells are filled, the convex hull is outlined, compatible pairs
    of wells are joined (dashed when rank-one), wells are labelled dots and
    anchors are red dots.
    """
    pts = dedupe_points(_planar(wells, chart), chart.geo_tol)
    if labels is None:
        labels = [f"U{k + 1}" for k in range(len(pts))]
    hull = convex_hull_2d(pts)
    view = _View(chart, [v for cell in region.cells for v in cell.vertices] + list(pts))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(view.width)}" '
        f'height="{_fmt(view.height)}" viewBox="0 0 {_fmt(view.width)} {_fmt(view.height)}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{_fmt(view.width)}" height="{_fmt(view.height)}" '
               'fill="white"/>')
    out.append('<g id="hull">')
    for cell in region.cells:
        if cell.kind == "polygon":
            out.append(f'<polygon points="{_points_attr(view, cell.vertices)}" '
                       f'fill="{HULL_FILL}" stroke="{HULL_FILL}" stroke-width="1"/>')
        elif cell.kind == "segment":
            (x0, y0), (x1, y1) = (view(v) for v in cell.vertices)
            out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                       f'stroke="{HULL_FILL}" stroke-width="6" stroke-linecap="round"/>')
    out.append("</g>")
    if hull.kind == "polygon":
        out.append(f'<polygon id="convex-hull" points="{_points_attr(view, hull.vertices)}" '
                   f'fill="none" stroke="{OUTLINE}" stroke-width="1"/>')
    out.append('<g id="pairs">')
    for i, j in combinations(range(len(pts)), 2):
        if not chart.compatible(pts[i], pts[j]):
            continue
        dash = ' stroke-dasharray="6,4"' if chart.rank_one_pair(pts[i], pts[j]) else ""
        (x0, y0), (x1, y1) = view(pts[i]), view(pts[j])
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                   f'stroke="{SEGMENT}" stroke-width="1.5"{dash}/>')
    out.append("</g>")
    out.append('<g id="anchors">')
    for a in _anchors(pts, chart):
        x, y = view(a)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{ANCHOR}"/>')
    out.append("</g>")
    out.append('<g id="wells" font-family="sans-serif" font-size="14">')
    for p, label in zip(pts, labels):
        x, y = view(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="{WELL}"/>')
        out.append(f'<text x="{_fmt(x + 7)}" y="{_fmt(y - 7)}">{_escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
