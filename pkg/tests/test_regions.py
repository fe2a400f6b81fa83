import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull
from shapely.geometry import Point, Polygon

from lamhull.regions import (ConvexCell, Membership, Region, convex_hull_2d, membership,
                             membership_many, relint_membership, sample_cell, signed_distance)

coords = st.floats(-10, 10, allow_nan=False).map(lambda x: round(x, 3))
point_lists = st.lists(st.tuples(coords, coords), min_size=1, max_size=12)

SQUARE = ConvexCell([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_hull_of_square_with_interior_and_duplicates():
    cell = convex_hull_2d([(1, 1), (0, 0), (0.5, 0.5), (1, 0), (0, 1), (1, 1), (0.5, 0)])
    assert cell.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
    assert cell.area() == pytest.approx(1.0)


def test_degenerate_hulls():
    assert convex_hull_2d([(2, 3)]).kind == "point"
    assert convex_hull_2d([(2, 3), (2, 3)]).kind == "point"
    seg = convex_hull_2d([(0, 0), (2, 2), (1, 1), (3, 3)])
    assert seg.kind == "segment" and seg.vertices == ((0, 0), (3, 3))
    with pytest.raises(ValueError):
        convex_hull_2d([])


@settings(max_examples=300, deadline=None)
@given(point_lists, st.randoms())
def test_hull_is_permutation_invariant(pts, rnd):
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert convex_hull_2d(pts) == convex_hull_2d(shuffled)


@settings(max_examples=300, deadline=None)
@given(point_lists)
def test_hull_matches_scipy(pts):
    cell = convex_hull_2d(pts)
    arr = np.unique(np.array(pts, dtype=float), axis=0)
    if cell.kind != "polygon":
        return
    ref = ConvexHull(arr)
    assert cell.area() == pytest.approx(ref.volume, rel=1e-9, abs=1e-9)
    assert cell.area() > 0  # counter-clockwise
    assert {tuple(v) for v in cell.vertices} <= {tuple(p) for p in arr[ref.vertices]}


def test_signed_distance():
    d = signed_distance([(0.5, 0.5), (2, 0.5), (0.5, 0.1), (2, 2)], SQUARE)
    assert d == pytest.approx([-0.5, 1.0, -0.1, np.sqrt(2)])
    seg = ConvexCell([(0, 0), (2, 0)])
    assert signed_distance([(1, 1), (3, 0)], seg) == pytest.approx([1.0, 1.0])
    assert signed_distance([(3, 4)], ConvexCell([(0, 0)])) == pytest.approx([5.0])


def test_three_valued_membership():
    r = Region([SQUARE])
    assert membership((0.5, 0.5), r, 0.1) is Membership.INSIDE
    assert membership((0.95, 0.5), r, 0.1) is Membership.BOUNDARY
    assert membership((1.05, 0.5), r, 0.1) is Membership.BOUNDARY
    assert membership((1.2, 0.5), r, 0.1) is Membership.OUTSIDE
    assert membership((1.0, 0.5), r, 0.0) is Membership.BOUNDARY
    with pytest.raises(ValueError):
        membership((0, 0), r, -1)


def test_shared_edge_is_interior_of_union():
    left = ConvexCell([(0, 0), (1, 0), (1, 1), (0, 1)])
    right = ConvexCell([(1, 0), (2, 0), (2, 1), (1, 1)])
    r = Region([left, right])
    assert membership((1.0, 0.5), r, 0.1) is Membership.INSIDE
    assert membership((1.0, 0.95), r, 0.1) is Membership.BOUNDARY


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=40),
       st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_membership_is_monotone_in_band(pts, b1, b2):
    lo, hi = sorted((b1, b2))
    r = Region([SQUARE, ConvexCell([(1, 1), (3, 2)])])
    small, big = membership_many(pts, r, lo), membership_many(pts, r, hi)
    for s, b in zip(small, big):
        if b is Membership.INSIDE:
            assert s is Membership.INSIDE
        if b is Membership.OUTSIDE:
            assert s is Membership.OUTSIDE


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=30))
def test_union_agrees_with_per_cell_disjunction_without_band(pts):
    cells = [SQUARE, ConvexCell([(2, 2), (4, 2), (3, 5)]), ConvexCell([(-3, 0), (-1, 4)])]
    union = membership_many(pts, Region(cells), 0.0)
    for k, p in enumerate(pts):
        per = [membership(p, Region([c]), 0.0) for c in cells]
        inside_any = any(m is not Membership.OUTSIDE for m in per)
        assert (union[k] is not Membership.OUTSIDE) == inside_any


def test_polygon_membership_matches_shapely(rng):
    verts = [(0, 0), (4, 1), (5, 4), (1, 3)]
    cell = convex_hull_2d(verts)
    poly = Polygon(verts)
    pts = rng.uniform(-1, 6, (2000, 2))
    status = membership_many(pts, Region([cell]), 0.05)
    for p, s in zip(pts, status):
        d = poly.exterior.distance(Point(p))
        if poly.contains(Point(p)) and d > 0.05:
            assert s is Membership.INSIDE
        elif not poly.contains(Point(p)) and d > 0.05:
            assert s is Membership.OUTSIDE
        else:
            assert s is Membership.BOUNDARY


def test_relative_interior():
    seg = ConvexCell([(0, 0), (2, 2)])
    assert relint_membership((1, 1), seg)
    assert not relint_membership((0, 0), seg)
    assert not relint_membership((1, 1.1), seg)
    assert relint_membership((0.5, 0.5), SQUARE)
    assert not relint_membership((1, 0.5), SQUARE)
    assert not relint_membership((0, 0), ConvexCell([(0, 0)]))


def test_samples_stay_in_cell(rng):
    tri = ConvexCell([(0, 0), (3, 0), (0, 2)])
    pts = sample_cell(tri, 1000, rng)
    assert np.all(signed_distance(pts, tri) <= 1e-12)
    # roughly uniform: mean near the centroid
    assert np.allclose(pts.mean(axis=0), [1.0, 2 / 3], atol=0.1)
    seg = sample_cell(ConvexCell([(0, 0), (1, 1)]), 50, rng)
    assert np.allclose(seg[:, 0], seg[:, 1])
    assert np.all(sample_cell(ConvexCell([(2, 3)]), 5, rng) == [2, 3])


def test_region_bbox():
    r = Region([SQUARE, ConvexCell([(3, -1)])])
    lo, hi = r.bbox()
    assert list(lo) == [0, -1] and list(hi) == [3, 1]
    assert r.polygons() == [SQUARE]
