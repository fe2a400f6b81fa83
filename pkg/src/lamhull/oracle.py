"""Brute-force lamination closure on a planar grid.

Wells are snapped to a square grid in chart coordinates.  A grid point is
occupied when its cell (the square of side ``h`` around it) holds a genuine
point of the closure.  Cells keep the closure points where a segment crosses
their vertical and horizontal center lines; points on a common grid line are
exactly rank-one compatible, so laminations along the rank-one directions are
never lost to rounding.  Only genuine points serve as segment endpoints, which
keeps the discrete closure inside the true one (a rasterised halo would feed
back into later steps and creep outward along oblique compatible edges).

Segments between interior points add little beyond what segments between
boundary cells add (a chord leaves the occupied set through boundary cells),
so by default only boundary cells supply endpoints, and pairs already
processed in the previous step are skipped.
"""
from dataclasses import dataclass
import math

import numba
import numpy as np

from .chart import PlanarPoint
from .errors import GridTooCoarse
from .regions import Membership, membership_many

MIN_RESOLUTION = 16


@dataclass(frozen=True)
class GridSpec:
    origin: tuple
    h: float
    nx: int
    ny: int

    @property
    def shape(self):
        return (self.nx, self.ny)

    def point(self, i, j):
        return PlanarPoint(self.origin[0] + i * self.h, self.origin[1] + j * self.h)

    def coordinates(self):
        """``(nx * ny, 2)`` array of grid points in row-major index order."""
        xs = self.origin[0] + self.h * np.arange(self.nx)
        ys = self.origin[1] + self.h * np.arange(self.ny)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        return np.stack([gx.ravel(), gy.ravel()], axis=1)

    def snap(self, p):
        return (int(round((p[0] - self.origin[0]) / self.h)),
                int(round((p[1] - self.origin[1]) / self.h)))


def grid_for(points, resolution):
    """Square grid over the bounding box of ``points`` padded by one cell.

    The longer side of the box gets ``resolution`` grid points.
    """
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be >= {MIN_RESOLUTION}")
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    lo, hi = p.min(axis=0), p.max(axis=0)
    span = float((hi - lo).max())
    if span == 0.0:
        span = 1.0
    h = span / (resolution - 3)
    nx, ny = (int(math.ceil((hi[k] - lo[k]) / h - 1e-9)) + 3 for k in (0, 1))
    return GridSpec(origin=(float(lo[0] - h), float(lo[1] - h)), h=h, nx=nx, ny=ny)


@dataclass
class ClosureResult:
    layers: list
    stabilized_at: int = None
    state: object = None

    @property
    def final(self):
        return self.layers[-1]


# crossings this close to a cell edge belong to both closed cells
TIE = 1e-7


@numba.njit(cache=True, inline="always")
def _hit(occ, rep, i, j, value, transpose):
    if transpose:
        i, j = j, i
    if 0 <= i < occ.shape[0] and 0 <= j < occ.shape[1]:
        occ[i, j] = True
        if rep[i, j] != rep[i, j]:
            rep[i, j] = value


@numba.njit(cache=True)
def _sweep(occ, rep, x0, y0, x1, y1, transpose):
    """Crossings of the segment with the center lines ``x = i``.

    With ``transpose`` the roles of the axes are swapped, so the same loop
    records crossings with the rows.
    """
    dx, dy = x1 - x0, y1 - y0
    if dx != 0.0:
        lo, hi = (x0, x1) if x0 < x1 else (x1, x0)
        slope = dy / dx
        for i in range(int(math.ceil(lo)), int(math.floor(hi)) + 1):
            y = y0 + (i - x0) * slope
            j = int(math.floor(y + 0.5))
            _hit(occ, rep, i, j, y, transpose)
            frac = y - j
            if frac >= 0.5 - TIE:
                _hit(occ, rep, i, j + 1, y, transpose)
            elif frac <= -0.5 + TIE:
                _hit(occ, rep, i, j - 1, y, transpose)
    elif x0 == math.floor(x0):
        # along a center line: one genuine point per cell, nearest its center
        lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
        for j in range(int(math.floor(lo + 0.5)), int(math.floor(hi + 0.5)) + 1):
            _hit(occ, rep, int(x0), j, min(max(float(j), lo), hi), transpose)


@numba.njit(cache=True)
def _raster(occ, vrep, hrep, x0, y0, x1, y1):
    _sweep(occ, vrep, x0, y0, x1, y1, False)
    _sweep(occ, hrep, y0, x0, y1, x1, True)


@numba.njit(cache=True)
def _pairs(occ, vrep, hrep, xs, ys, old, tol):
    n = xs.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            if old[a] and old[b]:
                continue
            if (xs[b] - xs[a]) * (ys[b] - ys[a]) <= tol:
                _raster(occ, vrep, hrep, xs[a], ys[a], xs[b], ys[b])


def boundary_cells(occ):
    """Occupied cells with an unoccupied 8-neighbour or on the grid edge."""
    pad = np.pad(occ, 1, constant_values=False)
    interior = np.ones_like(occ)
    nx, ny = occ.shape
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            interior &= pad[1 + di:1 + di + nx, 1 + dj:1 + dj + ny]
    return occ & ~interior


@dataclass
class ClosureState:
    """Occupancy plus the genuine closure points held by each cell.

    ``vrep[i, j]`` is the row coordinate (index units) of a closure point on
    column ``i`` inside cell ``(i, j)``, ``hrep[i, j]`` the column coordinate
    of one on row ``j``; NaN when absent.  Points on a common grid line are
    exactly rank-one compatible.
    """

    occ: np.ndarray
    vrep: np.ndarray
    hrep: np.ndarray

    def copy(self):
        return ClosureState(self.occ.copy(), self.vrep.copy(), self.hrep.copy())

    def same(self, other):
        return (np.array_equal(self.occ, other.occ)
                and np.array_equal(np.isnan(self.vrep), np.isnan(other.vrep))
                and np.array_equal(np.isnan(self.hrep), np.isnan(other.hrep)))

    def endpoints(self, mask):
        vi, vj = np.nonzero(mask & ~np.isnan(self.vrep))
        hi, hj = np.nonzero(mask & ~np.isnan(self.hrep))
        xs = np.concatenate([vi.astype(float), self.hrep[hi, hj]])
        ys = np.concatenate([self.vrep[vi, vj], hj.astype(float)])
        keys = np.concatenate([vi * self.occ.shape[1] + vj,
                               -(hi * self.occ.shape[1] + hj) - 1])
        return xs, ys, keys


def closure_step(current, g=None, full=False, previous=None, all_compatible=False):
    """One lamination step: segments between compatible closure points.

    Endpoints are the points held by boundary cells (all cells with
    ``full=True``).  ``previous`` is the key set of the preceding step's
    endpoints; pairs drawn entirely from it were already processed.
    ``all_compatible`` treats every pair as compatible (planes whose normal
    has ``det >= 0``).  Returns ``(next_state, endpoint_keys)``.
    """
    mask = current.occ if full else boundary_cells(current.occ)
    xs, ys, keys = current.endpoints(mask)
    if previous is None:
        old = np.zeros(len(keys), dtype=bool)
    else:
        old = np.isin(keys, previous)
    nxt = current.copy()
    scale = float(max(current.occ.shape))
    tol = np.inf if all_compatible else 1e-9 * scale * scale
    _pairs(nxt.occ, nxt.vrep, nxt.hrep, xs, ys, old, tol)
    return nxt, keys


def snap_wells(points, g):
    """Initial closure state: each well moved to its nearest grid point."""
    occ = np.zeros(g.shape, dtype=bool)
    vrep = np.full(g.shape, np.nan)
    hrep = np.full(g.shape, np.nan)
    seen = {}
    for k, p in enumerate(points):
        i, j = g.snap(p)
        if not (0 <= i < g.nx and 0 <= j < g.ny):
            raise ValueError(f"well {k} lies outside the grid")
        if (i, j) in seen and tuple(points[seen[i, j]]) != tuple(p):
            raise GridTooCoarse(f"wells {seen[i, j]} and {k} snap to the same grid point")
        seen.setdefault((i, j), k)
        occ[i, j] = True
        vrep[i, j] = float(j)
        hrep[i, j] = float(i)
    return ClosureState(occ, vrep, hrep)


def lamination_closure(points, g, max_degree=3, full=False, all_compatible=False):
    """Occupancy layers ``L^{e,0} .. L^{e,max_degree}`` of planar ``points``.

    ``stabilized_at`` is the least degree whose step changes nothing, or
    None if the closure still grew at ``max_degree``.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    state = snap_wells(points, g)
    layers = [state.occ]
    previous = None
    stabilized = None
    frozen = False
    for degree in range(max_degree):
        if not frozen:
            nxt, previous = closure_step(state, g, full=full, previous=previous,
                                          all_compatible=all_compatible)
            if stabilized is None and np.array_equal(nxt.occ, state.occ):
                stabilized = degree
            # identical state: every later step is identical too
            frozen = nxt.same(state)
            state = nxt
        layers.append(state.occ)
    return ClosureResult(layers=layers, stabilized_at=stabilized, state=state)


@dataclass(frozen=True)
class Comparison:
    false_pos: int
    false_neg: int
    band_hits: int

    @property
    def mismatches(self):
        return self.false_pos + self.false_neg


def compare_regions(analytic, cr, g, band=None):
    """Grid-point agreement between an analytic region and a closure.

    Points within ``band`` (default ``2h``) of the region boundary are
    counted in ``band_hits`` and never fail.
    """
    if band is None:
        band = 2.0 * g.h
    occ = (cr.final if isinstance(cr, ClosureResult) else cr).ravel()
    status = membership_many(g.coordinates(), analytic, band)
    outside = status == Membership.OUTSIDE
    inside = status == Membership.INSIDE
    return Comparison(false_pos=int(np.sum(occ & outside)),
                      false_neg=int(np.sum(inside & ~occ)),
                      band_hits=int(np.sum(status == Membership.BOUNDARY)))
