"""Finite unions of convex cells in planar coordinates.

A cell is a point, a segment or a convex polygon given by counter-clockwise
vertices.  Membership is three-valued: a query point is ``INSIDE`` when a
disc of radius ``band`` around it lies in the union, ``OUTSIDE`` when it is
farther than ``band`` from every cell, and ``BOUNDARY`` otherwise.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import tolerance
from .chart import PlanarPoint

RING_DIRECTIONS = 16


@dataclass(frozen=True)
class ConvexCell:
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices",
                           tuple(PlanarPoint(float(v[0]), float(v[1])) for v in self.vertices))
        if not self.vertices:
            raise ValueError("a cell needs at least one vertex")

    @property
    def kind(self):
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def array(self):
        return np.array(self.vertices, dtype=float)

    def area(self):
        if len(self.vertices) < 3:
            return 0.0
        v = self.array()
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def key(self):
        return self.vertices


@dataclass
class Region:
    cells: list
    chart: object = field(default=None, compare=False)

    def polygons(self):
        return [c for c in self.cells if c.kind == "polygon"]

    def bbox(self):
        pts = np.concatenate([c.array() for c in self.cells])
        return pts.min(axis=0), pts.max(axis=0)


class Membership(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points, tol=None):
    """Convex hull by Andrew's monotone chain.

    Collinear and duplicate points are dropped, so the result degenerates to
    a segment or a point when appropriate.  The first vertex is the
    lexicographically smallest one, which makes the output independent of
    input order.
    """
    pts = sorted({(float(p[0]), float(p[1])) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    scale = max(1.0, max(max(abs(x), abs(y)) for x, y in pts))
    if tol is None:
        tol = tolerance.geo_tol(scale)
    merged = [pts[0]]
    for p in pts[1:]:
        if abs(p[0] - merged[-1][0]) > tol or abs(p[1] - merged[-1][1]) > tol:
            merged.append(p)
    pts = merged
    if len(pts) == 1:
        return ConvexCell(pts)
    # area tolerance for the orientation test
    area_tol = tol * scale

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= area_tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        return ConvexCell([pts[0], pts[-1]])
    return ConvexCell(hull)


def _segment_distance(p, a, b):
    """Distances from points ``p`` (N, 2) to the segment ``[a, b]``."""
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.hypot(p[:, 0] - a[0], p[:, 1] - a[1])
    t = np.clip(((p - a) @ ab) / denom, 0.0, 1.0)
    foot = a + t[:, None] * ab
    return np.hypot(p[:, 0] - foot[:, 0], p[:, 1] - foot[:, 1])


def signed_distance(points, cell):
    """Signed distance of ``points`` to ``cell``: negative strictly inside a
    polygon (minus the distance to its boundary), non-negative elsewhere."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    v = cell.array()
    if len(v) == 1:
        return np.hypot(p[:, 0] - v[0, 0], p[:, 1] - v[0, 1])
    if len(v) == 2:
        return _segment_distance(p, v[0], v[1])
    m = len(v)
    dist = np.full(len(p), np.inf)
    inside = np.ones(len(p), dtype=bool)
    for i in range(m):
        a, b = v[i], v[(i + 1) % m]
        dist = np.minimum(dist, _segment_distance(p, a, b))
        inside &= _cross(a, b, p.T) > 0
    return np.where(inside, -dist, dist)


def membership_many(points, region, band):
    """Vectorised :func:`membership` for an (N, 2) array of points."""
    if band < 0:
        raise ValueError("band must be non-negative")
    p = np.atleast_2d(np.asarray(points, dtype=float))
    sd = np.stack([signed_distance(p, c) for c in region.cells])
    nearest = sd.min(axis=0)
    out = np.full(len(p), Membership.BOUNDARY, dtype=object)
    out[nearest > band] = Membership.OUTSIDE
    deep = nearest < -band
    out[deep] = Membership.INSIDE
    pending = np.flatnonzero(~deep & (nearest <= 0))
    if band > 0 and len(pending):
        # interior of the union across shared cell edges: test a ring
        angles = 2 * np.pi * np.arange(RING_DIRECTIONS) / RING_DIRECTIONS
        ring = np.stack([np.cos(angles), np.sin(angles)], axis=1) * band
        q = (p[pending][:, None, :] + ring[None, :, :]).reshape(-1, 2)
        covered = np.stack([signed_distance(q, c) for c in region.cells]).min(axis=0) <= 0
        ok = covered.reshape(len(pending), RING_DIRECTIONS).all(axis=1)
        out[pending[ok]] = Membership.INSIDE
    return out


def membership(p, region, band):
    return membership_many([p], region, band)[0]


def relint_membership(p, cell, tol=None):
    """True iff ``p`` lies in the relative interior of ``cell``."""
    v = cell.array()
    if tol is None:
        tol = tolerance.geo_tol(max(1.0, float(np.abs(v).max())))
    p = np.asarray(p, dtype=float)
    if len(v) == 1:
        return False
    if len(v) == 2:
        a, b = v
        ab = b - a
        length = float(np.hypot(*ab))
        off_line = abs(_cross(a, b, p)) / length
        t = float((p - a) @ ab) / length
        return off_line <= tol and tol < t < length - tol
    return bool(signed_distance(p, cell)[0] < -tol)


def sample_cell(cell, k, rng):
    """``k`` uniform random points of ``cell`` (fan triangulation)."""
    v = cell.array()
    if len(v) == 1:
        return np.repeat(v, k, axis=0)
    if len(v) == 2:
        t = rng.random(k)[:, None]
        return v[0] + t * (v[1] - v[0])
    tris = [(v[0], v[i], v[i + 1]) for i in range(1, len(v) - 1)]
    areas = np.array([abs(_cross(*t)) for t in tris])
    idx = rng.choice(len(tris), size=k, p=areas / areas.sum())
    r1, r2 = rng.random(k), rng.random(k)
    flip = r1 + r2 > 1
    r1[flip], r2[flip] = 1 - r1[flip], 1 - r2[flip]
    a = np.array([tris[i][0] for i in idx])
    b = np.array([tris[i][1] for i in idx])
    c = np.array([tris[i][2] for i in idx])
    return a + r1[:, None] * (b - a) + r2[:, None] * (c - a)
