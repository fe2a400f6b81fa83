import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lamhull.chart import make_frame
from lamhull.corpus import CORPUS, labels
from lamhull.io import (ParseError, dumps, format_float, parse_region, parse_wells,
                        parse_wells_csv, region_document, region_roundtrip, result_document,
                        wells_document)
from lamhull.lamination import hull_lamination
from lamhull.quasiconvex import quasiconvex_hull
from lamhull.render import render_svg
from lamhull.symmat import Sym2


def test_format_float():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(-0.0) == "0"
    assert format_float(2) == "2"
    with pytest.raises(ValueError):
        format_float(math.nan)


@settings(max_examples=500, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_seventeen_digits_roundtrip(x):
    assert float(format_float(x)) == x or (x == 0 and float(format_float(x)) == 0)


def test_dumps_is_valid_json():
    doc = {"a": [1.5, 2], "b": {"c": None, "d": "x"}, "e": [], "f": [[1, 2], {"g": True}]}
    assert json.loads(dumps(doc)) == doc


def test_parse_wells():
    wells, names = parse_wells('{"wells": [{"a11": 1, "a12": 0, "a22": 2}], "labels": ["A"]}')
    assert wells == [Sym2(1, 0, 2)] and names == ["A"]
    wells, names = parse_wells('{"wells": [{"a11": 1, "a12": 0, "a22": 2}]}')
    assert names == ["U1"]


@pytest.mark.parametrize("text", [
    "not json", "[]", '{"wells": []}', '{"wells": [1]}', '{"wells": [{"a11": 1, "a12": 0}]}',
    '{"wells": [{"a11": "x", "a12": 0, "a22": 0}]}',
    '{"wells": [{"a11": 1, "a12": 0, "a22": 0}], "labels": ["a", "b"]}',
    '{"wells": [{"a11": 1e999, "a12": 0, "a22": 0}]}',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_wells(text)


def test_csv_import():
    wells, names = parse_wells_csv("a11,a12,a22,label\n1,0,2,A\n2,0,-1,B\n")
    assert wells == [Sym2(1, 0, 2), Sym2(2, 0, -1)] and names == ["A", "B"]
    wells, names = parse_wells_csv("1,0,2\n\n2,0,-1\n")
    assert names == ["U1", "U2"]
    for bad in ("", "1,2\n", "1,x,2\n", "1,nan,2\n"):
        with pytest.raises(ParseError):
            parse_wells_csv(bad)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_wells_document_roundtrip(name):
    wells = CORPUS[name]()
    text = dumps(wells_document(wells, labels(len(wells))))
    back, names = parse_wells(text)
    assert back == wells and names == labels(len(wells))


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("kind", ["lam", "quasi"])
def test_region_file_roundtrip_is_byte_identical(name, kind):
    wells = CORPUS[name]()
    if kind == "lam":
        doc = region_document(hull_lamination(wells, make_frame(wells)), "lam")
    else:
        doc = result_document(quasiconvex_hull(wells))
    text = dumps(doc)
    assert region_roundtrip(text) == text
    region, cert, outer, meta = parse_region(text)
    assert meta["kind"] in ("lam", "quasi", "quasi-bounds")
    assert len(region.cells) == len(doc["cells"])


def test_region_roundtrip_random(rng):
    from helpers import random_well_set
    for _ in range(20):
        wells, c = random_well_set(rng, int(rng.integers(3, 7)))
        text = dumps(result_document(quasiconvex_hull(wells)))
        assert region_roundtrip(text) == text
        region, _, _, _ = parse_region(text)
        # the chart survives: wells map to the same planar points
        for w in wells:
            assert region.chart.to_planar(w) == pytest.approx(c.to_planar(w), abs=1e-9)


def test_parse_region_errors():
    with pytest.raises(ParseError):
        parse_region("{}")
    with pytest.raises(ParseError):
        parse_region("nope")


def test_svg_structure(five):
    wells, c = five
    svg = render_svg(wells, hull_lamination(wells, c), c, labels(5))
    root = ET.fromstring(svg.split("\n", 1)[1])
    ns = "{http://www.w3.org/2000/svg}"
    groups = {g.get("id"): g for g in root.iter(ns + "g")}
    assert len(groups["hull"]) == len(hull_lamination(wells, c).cells)
    assert [t.text for t in groups["wells"].iter(ns + "text")] == labels(5)
    dashed = [e for e in groups["pairs"] if e.get("stroke-dasharray")]
    assert len(dashed) == 2  # {U2,U3} and {U3,U5}
    assert len(groups["anchors"]) > 0
    assert root.find(ns + "polygon[@id='convex-hull']") is not None


def test_svg_is_isometric(five):
    wells, c = five
    svg = render_svg(wells, hull_lamination(wells, c), c)
    root = ET.fromstring(svg.split("\n", 1)[1])
    ns = "{http://www.w3.org/2000/svg}"
    circles = [e for e in root.find(ns + "g[@id='wells']") if e.tag == ns + "circle"]
    xy = np.array([[float(e.get("cx")), float(e.get("cy"))] for e in circles])
    # drawing distances are proportional to Frobenius distances
    ratios = []
    for i in range(5):
        for j in range(i + 1, 5):
            ratios.append(np.linalg.norm(xy[i] - xy[j]) / (wells[i] - wells[j]).norm())
    assert max(ratios) / min(ratios) == pytest.approx(1.0, abs=1e-3)


def test_single_well_svg():
    w = [Sym2(1, 2, 3)]
    c = make_frame(w)
    svg = render_svg(w, hull_lamination(w, c), c)
    assert svg.count("<circle") == 1


def test_svg_is_deterministic(four):
    wells, c = four
    r = hull_lamination(wells, c)
    assert render_svg(wells, r, c) == render_svg(wells, r, c)
