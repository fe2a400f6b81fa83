"""Symmetric lamination convex hulls of coplanar wells.

Three wells are classified by their pairwise compatibility.  With two
compatible pairs the hull is a union of two triangles meeting at an anchor
point that is rank-one compatible with both wells of the incompatible pair.
For more wells the hull is the union of the hulls of all triples.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .chart import PlanarPoint
from .errors import AnchorAmbiguous, AnchorNotFound, DegenerateTriple
from .regions import ConvexCell, Region, convex_hull_2d, signed_distance
from .symmat import Relation


class ThreeWellKind(Enum):
    PAIRWISE_INCOMPATIBLE = "pairwise-incompatible"
    ONE_COMPATIBLE_PAIR = "one-compatible-pair"
    TWO_COMPATIBLE_PAIRS = "two-compatible-pairs"
    PAIRWISE_COMPATIBLE = "pairwise-compatible"


@dataclass(frozen=True)
class ThreeWellClass:
    """Compatibility class of a triple.

    ``pair`` holds the compatible pair for ``ONE_COMPATIBLE_PAIR`` and the
    lonely incompatible pair for ``TWO_COMPATIBLE_PAIRS`` (indices into the
    triple); ``anchor`` is set only in the latter case.
    """

    kind: ThreeWellKind
    pair: tuple = None
    anchor: PlanarPoint = None
    rank_one_pairs: tuple = ()
    is_flag_block: bool = False
    collinear: bool = False


def planar_relation(p, q, c):
    d = c.planar_det(p, q)
    tau = c.det_tol
    if abs(d) <= tau:
        return Relation.RANK_ONE
    return Relation.INCOMPATIBLE if d > 0 else Relation.STRICTLY_COMPATIBLE


def _planar(points, c):
    """Planar coordinates of matrices; pairs of numbers pass through."""
    return [c.to_planar(p) if hasattr(p, "a11") else PlanarPoint(float(p[0]), float(p[1]))
            for p in points]


def _collinear(pts, c):
    a, b, d = (np.asarray(p, dtype=float) for p in pts)
    cross = (b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0])
    span = max(np.abs(b - a).max(), np.abs(d - a).max(), 1.0)
    return bool(abs(cross) <= c.geo_tol * span)


def _distinct(pts, c):
    for p, q in combinations(pts, 2):
        if abs(p[0] - q[0]) <= c.geo_tol and abs(p[1] - q[1]) <= c.geo_tol:
            return False
    return True


def classify_three(triple, c):
    """Classify three distinct wells (matrices or planar points) on chart ``c``."""
    pts = _planar(triple, c)
    if len(pts) != 3:
        raise DegenerateTriple(f"expected 3 wells, got {len(pts)}")
    if not _distinct(pts, c):
        raise DegenerateTriple("two wells of the triple coincide")
    pairs = list(combinations(range(3), 2))
    rel = {ij: planar_relation(pts[ij[0]], pts[ij[1]], c) for ij in pairs}
    compatible = [ij for ij in pairs if rel[ij].compatible]
    rank_one = tuple(ij for ij in pairs if rel[ij] is Relation.RANK_ONE)
    counts = [sum(r is k for r in rel.values()) for k in Relation]
    flag = counts == [1, 1, 1]
    collinear = _collinear(pts, c)
    n = len(compatible)
    common = dict(rank_one_pairs=rank_one, is_flag_block=flag, collinear=collinear)
    if n == 0:
        return ThreeWellClass(ThreeWellKind.PAIRWISE_INCOMPATIBLE, **common)
    if n == 3:
        return ThreeWellClass(ThreeWellKind.PAIRWISE_COMPATIBLE, **common)
    if n == 1:
        return ThreeWellClass(ThreeWellKind.ONE_COMPATIBLE_PAIR, pair=compatible[0], **common)
    lonely = next(ij for ij in pairs if not rel[ij].compatible)
    anchor = None if collinear else anchor_point(pts, c, lonely)
    return ThreeWellClass(ThreeWellKind.TWO_COMPATIBLE_PAIRS, pair=lonely, anchor=anchor, **common)


def anchor_point(triple, c, pair=None):
    """Point of the triple's convex hull rank-one compatible with both wells
    of its unique incompatible pair.

    The candidates are the two remaining corners ``(xi_P, eta_R)`` and
    ``(xi_R, eta_P)`` of the axis-parallel rectangle spanned by the
    incompatible pair ``P, R``; exactly one lies in the triangle and is
    compatible with the third well.
    """
    pts = _planar(triple, c)
    if pair is None:
        bad = [ij for ij in combinations(range(3), 2)
               if not planar_relation(pts[ij[0]], pts[ij[1]], c).compatible]
        if len(bad) != 1:
            raise AnchorNotFound(f"triple has {len(bad)} incompatible pairs, expected 1")
        pair = bad[0]
    i, j = pair
    k = 3 - i - j
    p, r, s = pts[i], pts[j], pts[k]
    cell = convex_hull_2d(pts)
    tol = c.geo_tol * max(1.0, *(abs(x) for q in pts for x in q))
    found = []
    for cand in (PlanarPoint(p[0], r[1]), PlanarPoint(r[0], p[1])):
        inside = signed_distance(cand, cell)[0] <= tol
        if inside and c.planar_det(s, cand) <= c.det_tol:
            found.append(cand)
    if not found:
        raise AnchorNotFound("no anchor candidate lies in the hull")
    if len(found) > 1:
        raise AnchorAmbiguous("both anchor candidates qualify")
    return found[0]


def _pairwise_cells(pts, c):
    """Points and compatible segments, for collinear or tiny inputs."""
    cells = []
    linked = set()
    for i, j in combinations(range(len(pts)), 2):
        if planar_relation(pts[i], pts[j], c).compatible:
            cells.append(convex_hull_2d([pts[i], pts[j]]))
            linked.update((i, j))
    cells += [ConvexCell([pts[i]]) for i in range(len(pts)) if i not in linked]
    return cells


def _three_cells(pts, c):
    cls = classify_three(pts, c)
    if cls.collinear:
        if cls.kind is ThreeWellKind.PAIRWISE_COMPATIBLE:
            return [convex_hull_2d(pts)]
        return _pairwise_cells(pts, c)
    if cls.kind is ThreeWellKind.PAIRWISE_INCOMPATIBLE:
        return [ConvexCell([p]) for p in pts]
    if cls.kind is ThreeWellKind.PAIRWISE_COMPATIBLE:
        return [convex_hull_2d(pts)]
    if cls.kind is ThreeWellKind.ONE_COMPATIBLE_PAIR:
        i, j = cls.pair
        k = 3 - i - j
        return [ConvexCell([pts[k]]), convex_hull_2d([pts[i], pts[j]])]
    i, j = cls.pair
    k = 3 - i - j
    u0 = cls.anchor
    return [convex_hull_2d([u0, pts[k], pts[i]]), convex_hull_2d([u0, pts[k], pts[j]])]


def hull_three(triple, c):
    """Lamination hull of three wells as a :class:`Region`."""
    return Region(_three_cells(_planar(triple, c), c), c)


def dedupe_points(pts, tol):
    out = []
    for p in pts:
        if all(abs(p[0] - q[0]) > tol or abs(p[1] - q[1]) > tol for q in out):
            out.append(p)
    return out


def _merge(cells, tol=0.0):
    """Drop repeated cells and cells contained in another cell."""
    seen, unique = set(), []
    for cell in cells:
        if cell.key() not in seen:
            seen.add(cell.key())
            unique.append(cell)
    n = len(unique)
    inside = np.zeros((n, n), dtype=bool)  # inside[k, j]: cell k lies in cell j
    arrays = [cell.array() for cell in unique]
    lo = np.array([a.min(axis=0) for a in arrays]).reshape(-1, 2)
    hi = np.array([a.max(axis=0) for a in arrays]).reshape(-1, 2)
    for k in range(n):
        # bounding boxes rule out most pairs cheaply
        fits = np.all((lo <= lo[k] + tol) & (hi >= hi[k] - tol), axis=1)
        for j in np.flatnonzero(fits):
            if j != k:
                inside[k, j] = bool(np.all(signed_distance(arrays[k], unique[j]) <= tol))
    # of two equal cells the first one is kept
    return [cell for k, cell in enumerate(unique)
            if not any(inside[k, j] and (j < k or not inside[j, k]) for j in range(n))]


def triplet_hulls(wells, c):
    """``[(indices, Region)]`` for every triple, in lexicographic order."""
    pts = _planar(wells, c)
    return [(ijk, Region(_three_cells([pts[i] for i in ijk], c), c))
            for ijk in combinations(range(len(pts)), 3)]


def hull_lamination(wells, c):
    """Lamination convex hull of coplanar ``wells`` on chart ``c``.

    One well gives a point, two give a segment or two points, and three or
    more give the union of all triple hulls.  Frames without rank-one
    structure (normal with ``det >= 0``) make every pair compatible, so the
    hull is the convex hull.
    """
    pts = dedupe_points(_planar(wells, c), c.geo_tol)
    if not pts:
        raise ValueError("no wells")
    if not getattr(c, "rank_one", False):
        if all(c.compatible(p, q) for p, q in combinations(pts, 2)):
            return Region([convex_hull_2d(pts)], c)
        return Region(_merge(_pairwise_cells(pts, c), c.geo_tol), c)
    if len(pts) < 3:
        return Region(_pairwise_cells(pts, c), c)
    cells = []
    for ijk in combinations(range(len(pts)), 3):
        cells += _three_cells([pts[i] for i in ijk], c)
    return Region(_merge(cells, c.geo_tol), c)


def convex_region(wells, c):
    return Region([convex_hull_2d(_planar(wells, c))], c)
