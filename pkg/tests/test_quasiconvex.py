from dataclasses import replace

import pytest

from lamhull.chart import make_frame
from lamhull.errors import WrongArity
from lamhull.quasiconvex import (Bounds, CertificateKind, Exact, NotApplicable,
                                 detect_basic_configuration, detect_wedge, four_well_condition,
                                 quasiconvex_hull, rank_one_pairs, separation_certificate,
                                 supporting_functionals, verify_certificate, verify_witness)
from lamhull.regions import Membership, membership
from lamhull.symmat import Sym2, determinant

# a chart with det = xi * eta: xi along diag(1, 0), eta along diag(0, 1)
PLANE = make_frame([Sym2(0, 0, 0), Sym2(1, 0, 0), Sym2(0, 0, 1)])


def lifted(points):
    return [PLANE.from_planar(p) for p in points]


def test_plane_fixture():
    assert PLANE.rank_one and PLANE.cross_factor == pytest.approx(1.0)
    assert PLANE.planar_det((1, 2), (0, 0)) == pytest.approx(determinant(Sym2(1, 0, 2)))


def test_rank_one_pairs(five, degenerate):
    wells, c = five
    assert rank_one_pairs(wells, c) == [(1, 2), (2, 4)]
    wells, c = degenerate
    assert rank_one_pairs(wells, c) == [(0, 1), (2, 3)]


def test_wedge():
    pts = [(0, 0), (2, 2), (4, -1), (2, 0)]
    w = detect_wedge(pts, PLANE)
    assert w.triple == (0, 1, 2) and w.center == 3
    assert four_well_condition(pts, PLANE).reason is NotApplicable.WEDGE
    with pytest.raises(WrongArity):
        detect_wedge(pts[:3], PLANE)


def test_four_well_conditions(degenerate, four):
    wells, c = degenerate
    v = four_well_condition(wells, c)
    assert v.condition == 1 and v.pairs == ((0, 1), (2, 3))
    assert four_well_condition([(-1, 0), (0, -1), (2, 0), (0, 3)], PLANE).condition == 2
    assert four_well_condition([(0, 0), (1, 0), (0, -1), (2, -3)], PLANE).condition == 3
    wells, c = four
    assert four_well_condition(wells, c).reason is NotApplicable.TOO_FEW_RANK_ONE_PAIRS
    # the last well is incompatible with the other three
    isolated = [(0, 0), (1, 0), (0, -1), (5, 5)]
    assert four_well_condition(isolated, PLANE).reason is NotApplicable.ISOLATED_WELL
    with pytest.raises(WrongArity):
        four_well_condition([(0, 0)], PLANE)


def test_excluded_alignment():
    # rank-one pairs share a well but point into opposite cone halves
    pts = [(0, 0), (1, 0), (0, 1), (-1, 2)]
    v = four_well_condition(pts, PLANE)
    assert not v.applies


def test_degenerate_decomposition(degenerate):
    wells, c = degenerate
    d = detect_basic_configuration(wells, c)
    assert d.m0 == pytest.approx((-3, -4))
    assert d.alphas == pytest.approx((1, 2, 1)) and d.betas == pytest.approx((1, 2, 1))
    assert d.missing == ("W1", "V3")
    rebuilt = sorted(d.wells())
    assert rebuilt == pytest.approx(sorted(c.to_planar(w) for w in wells))


def test_flag_block_decomposition():
    d = detect_basic_configuration([(1, 0), (0, 2), (-3, 0)], PLANE)
    assert d is not None and d.missing == ("V1",)


def test_no_decomposition_for_four_well(four, five):
    assert detect_basic_configuration(*four) is None
    assert detect_basic_configuration(*five) is None
    assert detect_basic_configuration([(0, 0), (1, 1), (2, 2)], PLANE) is None


def test_supporting_functionals(degenerate):
    wells, c = degenerate
    d = detect_basic_configuration(wells, c)
    low, high = supporting_functionals(d)
    pts = [c.to_planar(w) for w in wells]
    assert min(low(p) for p in pts) == pytest.approx(1.0)
    assert max(high(p) for p in pts) == pytest.approx(1.0)
    slots = dict(d.slots())
    for name in low.pair:
        assert low(slots[name]) == pytest.approx(1.0)
    for name in high.pair:
        assert high(slots[name]) == pytest.approx(1.0)


def test_cascade_results(four, five, degenerate):
    r = quasiconvex_hull(four[0])
    assert isinstance(r, Bounds) and not r.exact
    assert len(r.outer.cells) == 1 and len(r.inner.cells) == 4
    assert isinstance(quasiconvex_hull(five[0]), Bounds)
    r = quasiconvex_hull(degenerate[0])
    assert isinstance(r, Exact)
    assert r.certificate.kind is CertificateKind.FOUR_WELL_CONDITION
    assert r.certificate.condition == 1
    assert verify_certificate(r.certificate, degenerate[0], r.chart)


def test_pairwise_compatible_is_convex():
    wells = lifted([(0, 0), (1, -1), (3, -2), (4, -5)])
    r = quasiconvex_hull(wells)
    assert r.certificate.kind is CertificateKind.PAIRWISE_COMPATIBLE
    assert len(r.region.cells) == 1 and r.region.cells[0].kind == "polygon"
    assert verify_certificate(r.certificate, wells, r.chart)


def test_three_well_with_rank_one_pair():
    wells = lifted([(1, 0), (0, 2), (-3, 0)])
    r = quasiconvex_hull(wells)
    assert r.certificate.kind is CertificateKind.THREE_WELL_RANK_ONE
    assert r.certificate.decomposition is not None
    assert verify_certificate(r.certificate, wells, r.chart)


def test_tampered_certificates_fail(degenerate):
    wells, _ = degenerate
    r = quasiconvex_hull(wells)
    bad = replace(r.certificate, condition=2)
    assert not verify_certificate(bad, wells, r.chart)
    bad = replace(r.certificate, pairs=((0, 2), (1, 3)))
    assert not verify_certificate(bad, wells, r.chart)
    bad = replace(r.certificate, kind=CertificateKind.PAIRWISE_COMPATIBLE)
    assert not verify_certificate(bad, wells, r.chart)


def test_separation_witness(degenerate):
    wells, c = degenerate
    m = (-1.0, -0.7)
    w = separation_certificate(m, wells, c)
    assert w is not None and verify_witness(w, m, wells, c)
    # re-check on the matrices themselves
    u0 = c.from_planar(w.anchor)
    mm = c.from_planar(m)
    assert all(determinant(v - u0) >= -1e-9 for v in wells)
    assert determinant(mm - u0) < 0
    lam = quasiconvex_hull(wells).region
    assert membership(m, lam, 1e-6) is Membership.OUTSIDE


def test_no_witness_inside(degenerate):
    wells, c = degenerate
    assert separation_certificate((-1.0, -1.5), wells, c) is None
    assert separation_certificate(c.to_planar(wells[0]), wells, c) is None
    assert separation_certificate(wells[1], wells, c) is None
