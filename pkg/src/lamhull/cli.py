"""Command line interface: ``lamhull <command> WELLS [options]``.

Exit codes: 0 ok, 1 oracle mismatch, 2 parse or usage error, 3 wells not
coplanar, 4 query matrix off the plane, 5 oracle grid too coarse, 6 I/O.
"""
import argparse
from itertools import combinations
import sys
import time

import numpy as np

from . import __version__, tolerance
from .chart import PlanarPoint, make_frame
from .errors import GridTooCoarse, NotCoplanar, OffPlane
from .io import ParseError, dumps, read_wells, region_document, result_document
from .lamination import _planar, classify_three, convex_region, dedupe_points, hull_lamination
from .oracle import MIN_RESOLUTION, compare_regions, grid_for, lamination_closure
from .quasiconvex import (Exact, detect_basic_configuration, detect_wedge, four_well_condition,
                          quasiconvex_hull, separation_certificate, verify_witness)
from .regions import signed_distance
from .render import render_svg
from .symmat import Sym2, compatibility, determinant

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_NOT_COPLANAR = 3
EXIT_OFF_PLANE = 4
EXIT_GRID = 5
EXIT_IO = 6

_SHORT = {"incompatible": "I", "strictly-compatible": "C", "rank-one": "R"}


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _num(x):
    """Ten significant digits; round-off dust and negative zero print as 0."""
    x = float(x)
    return format(x if abs(x) > 1e-12 else 0.0, ".10g")


def _setup(path):
    try:
        wells, labels = read_wells(path)
    except OSError as e:
        raise _Fail(EXIT_IO, f"cannot read {path}: {e.strerror or e}") from None
    except ParseError as e:
        raise _Fail(EXIT_PARSE, f"{path}: {e}") from None
    try:
        chart = make_frame(wells)
    except NotCoplanar as e:
        raise _Fail(EXIT_NOT_COPLANAR, f"wells are not coplanar: {e}") from None
    return wells, labels, chart


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise _Fail(EXIT_IO, f"cannot write {path}: {e.strerror or e}") from None


# classify

def classify_report(wells, labels, chart):
    """Plain data describing compatibility structure of a well set."""
    n = len(wells)
    pts = _planar(wells, chart)
    relations = [[None if i == j else compatibility(wells[i], wells[j]).value
                  for j in range(n)] for i in range(n)]
    distinct = len(dedupe_points(pts, chart.geo_tol)) == n
    if n < 3:
        status = "trivial"
    elif chart.rank_one:
        status = "coplanar"
    else:
        status = "coplanar-nonnegative-normal"
    report = {
        "wells": n,
        "labels": list(labels),
        "coplanarity": status,
        "normal": [chart.normal.a11, chart.normal.a12, chart.normal.a22],
        "det_normal": determinant(chart.normal),
        "planar": [list(p) for p in pts],
        "relations": relations,
        "rank_one_pairs": [[labels[i], labels[j]] for i, j in combinations(range(n), 2)
                           if relations[i][j] == "rank-one"],
        "compatible_with": {labels[i]: [labels[j] for j in range(n)
                                        if j != i and relations[i][j] != "incompatible"]
                            for i in range(n)},
        "triples": [],
        "wedge": None,
        "four_well_condition": None,
        "basic_configuration": None,
    }
    if n >= 3 and distinct and chart.rank_one:
        for ijk in combinations(range(n), 3):
            cls = classify_three([pts[i] for i in ijk], chart)
            report["triples"].append({
                "wells": [labels[i] for i in ijk],
                "kind": cls.kind.value,
                "anchor": list(cls.anchor) if cls.anchor is not None else None,
                "flag": cls.is_flag_block,
            })
        if n == 4:
            w = detect_wedge(pts, chart)
            report["wedge"] = None if w is None else {
                "triple": [labels[i] for i in w.triple], "center": labels[w.center]}
            v = four_well_condition(pts, chart)
            report["four_well_condition"] = (
                {"condition": v.condition, "pairs": [[labels[i], labels[j]] for i, j in v.pairs]}
                if v.applies else {"not_applicable": v.reason.value})
        d = detect_basic_configuration(pts, chart)
        if d is not None:
            report["basic_configuration"] = {
                "m0": list(d.m0), "alphas": list(d.alphas), "betas": list(d.betas),
                "missing": list(d.missing)}
    return report


def _classify_text(r):
    lab = r["labels"]
    out = [f"wells: {r['wells']}  status: {r['coplanarity']}",
           "normal Q: [" + ", ".join(_num(x) for x in r["normal"]) + "]"
           + f"  det Q: {_num(r['det_normal'])}",
           "planar coordinates (xi, eta):"]
    width = max(len(s) for s in lab)
    for s, (x, y) in zip(lab, r["planar"]):
        out.append(f"  {s:<{width}}  {_num(x)}, {_num(y)}")
    out.append("relations (R rank-one, C compatible, I incompatible):")
    out.append("  " + " " * width + "  " + " ".join(f"{s:>{width}}" for s in lab))
    for s, row in zip(lab, r["relations"]):
        cells = ["-" if v is None else _SHORT[v] for v in row]
        out.append(f"  {s:<{width}}  " + " ".join(f"{c:>{width}}" for c in cells))
    pairs = ", ".join("{" + a + "," + b + "}" for a, b in r["rank_one_pairs"]) or "none"
    out.append(f"rank-one pairs: {pairs}")
    for s in lab:
        partners = r["compatible_with"][s]
        out.append(f"  {s} compatible with " + (", ".join(partners) if partners else "nothing"))
    if r["triples"]:
        out.append("three-well classes:")
        for t in r["triples"]:
            line = f"  {{{','.join(t['wells'])}}}: {t['kind']}"
            if t["anchor"] is not None:
                line += f", anchor ({_num(t['anchor'][0])}, {_num(t['anchor'][1])})"
            if t["flag"]:
                line += ", flag block"
            out.append(line)
    if r["wells"] == 4 and r["triples"]:
        w = r["wedge"]
        out.append("wedge: " + ("none" if w is None
                                else f"{w['center']} inside {{{','.join(w['triple'])}}}"))
        f = r["four_well_condition"]
        if "condition" in f:
            pairs = " and ".join("{" + ",".join(p) + "}" for p in f["pairs"])
            out.append(f"four-well condition: {f['condition']} via {pairs}")
        else:
            out.append(f"four-well condition: not applicable ({f['not_applicable']})")
    b = r["basic_configuration"]
    if b is None:
        out.append("basic configuration: none")
    else:
        out.append("basic configuration: M0 = (" + ", ".join(_num(x) for x in b["m0"]) + ")"
                   + "  alpha = [" + ", ".join(_num(x) for x in b["alphas"]) + "]"
                   + "  beta = [" + ", ".join(_num(x) for x in b["betas"]) + "]"
                   + (f"  missing {', '.join(b['missing'])}" if b["missing"] else ""))
    return "\n".join(out) + "\n"


def cmd_classify(args):
    wells, labels, chart = _setup(args.input)
    report = classify_report(wells, labels, chart)
    _write(dumps(report) if args.json else _classify_text(report), None)
    return EXIT_OK


# hull

def cmd_hull(args):
    wells, labels, chart = _setup(args.input)
    if args.kind == "lam":
        doc = region_document(hull_lamination(wells, chart), "lam", version=__version__)
    elif args.kind == "convex":
        doc = region_document(convex_region(dedupe_points(_planar(wells, chart), chart.geo_tol),
                                            chart), "convex", version=__version__)
    else:
        doc = result_document(quasiconvex_hull(wells), version=__version__)
    _write(dumps(doc), args.out)
    return EXIT_OK


# certify

def _parse_floats(text, count, flag):
    try:
        values = [float(s) for s in text.split(",")]
    except ValueError:
        raise _Fail(EXIT_PARSE, f"{flag}: expected {count} comma-separated numbers") from None
    if len(values) != count or not all(np.isfinite(values)):
        raise _Fail(EXIT_PARSE, f"{flag}: expected {count} finite comma-separated numbers")
    return values


def _entries(u):
    return [u.a11, u.a12, u.a22]


def certify_report(m, wells, labels, chart):
    pts = _planar(wells, chart)
    tol = chart.geo_tol
    for label, p in zip(labels, pts):
        if abs(p[0] - m[0]) <= tol and abs(p[1] - m[1]) <= tol:
            return {"status": "member", "degree": 0, "well": label}
    lam = hull_lamination(wells, chart)
    for k, cell in enumerate(lam.cells):
        if signed_distance(m, cell)[0] <= tol * max(1.0, chart.scale):
            return {"status": "member", "cell": k, "cell_kind": cell.kind,
                    "vertices": [list(v) for v in cell.vertices]}
    w = separation_certificate(m, pts, chart) if chart.rank_one else None
    if w is not None:
        return {"status": "separated", "anchor": list(w.anchor),
                "anchor_matrix": _entries(chart.from_planar(w.anchor)),
                "margins": dict(zip(labels, w.margins)), "excluded_det": w.excluded_det,
                "verified": verify_witness(w, m, pts, chart)}
    hull = convex_region(pts, chart).cells[0]
    if signed_distance(m, hull)[0] > tol * max(1.0, chart.scale):
        return {"status": "outside-convex-hull"}
    result = quasiconvex_hull(wells)
    if isinstance(result, Exact):
        return {"status": "outside", "certificate": result.certificate.kind.value}
    return {"status": "inconclusive"}


def _certify_text(r, m):
    head = f"point ({_num(m[0])}, {_num(m[1])}): "
    s = r["status"]
    if s == "member" and "degree" in r:
        return head + f"member (degree 0), well {r['well']}\n"
    if s == "member":
        return head + f"member of L^e, cell {r['cell']} ({r['cell_kind']})\n"
    if s == "separated":
        lines = [head + "not in Q^e, separation witness",
                 f"  anchor U0 = ({_num(r['anchor'][0])}, {_num(r['anchor'][1])})"
                 f"  matrix [{', '.join(_num(x) for x in r['anchor_matrix'])}]",
                 f"  det(M - U0) = {_num(r['excluded_det'])}"]
        lines += [f"  det({k} - U0) = {_num(v)}" for k, v in r["margins"].items()]
        lines.append(f"  re-verified: {'yes' if r['verified'] else 'no'}")
        return "\n".join(lines) + "\n"
    if s == "outside-convex-hull":
        return head + "outside the convex hull\n"
    if s == "outside":
        return head + f"not in Q^e (exact hull by {r['certificate']})\n"
    return head + "inconclusive (in the convex hull, outside L^e, no witness found)\n"


def cmd_certify(args):
    wells, labels, chart = _setup(args.input)
    if args.matrix is not None:
        a11, a12, a22 = _parse_floats(args.matrix, 3, "--matrix")
        try:
            m = chart.to_planar(Sym2(a11, a12, a22))
        except OffPlane as e:
            raise _Fail(EXIT_OFF_PLANE, f"matrix is not on the plane of the wells: {e}") from None
    else:
        m = PlanarPoint(*_parse_floats(args.point, 2, "--point"))
    report = certify_report(m, wells, labels, chart)
    report = {"point": list(m), **report}
    _write(dumps(report) if args.json else _certify_text(report, m), None)
    return EXIT_OK


# oracle

def cmd_oracle(args):
    wells, labels, chart = _setup(args.input)
    if args.grid < MIN_RESOLUTION:
        raise _Fail(EXIT_PARSE, f"--grid must be at least {MIN_RESOLUTION}")
    if args.degree < 3:
        raise _Fail(EXIT_PARSE, "--degree must be at least 3")
    pts = dedupe_points(_planar(wells, chart), chart.geo_tol)
    analytic = hull_lamination(pts, chart)
    g = grid_for(pts, args.grid)
    start = time.perf_counter()
    try:
        cr = lamination_closure(pts, g, args.degree, all_compatible=not chart.rank_one)
    except GridTooCoarse as e:
        raise _Fail(EXIT_GRID, f"grid too coarse: {e}") from None
    elapsed = time.perf_counter() - start
    cmp = compare_regions(analytic, cr, g)
    report = {"grid": [g.nx, g.ny], "h": g.h, "degree": args.degree,
              "stabilized_at": cr.stabilized_at,
              "layers": [int(layer.sum()) for layer in cr.layers],
              "false_positives": cmp.false_pos, "false_negatives": cmp.false_neg,
              "band_points": cmp.band_hits, "mismatches": cmp.mismatches}
    if args.json:
        _write(dumps(report), None)
    else:
        stab = "not within degree" if cr.stabilized_at is None else str(cr.stabilized_at)
        _write(f"grid {g.nx} x {g.ny}, h = {_num(g.h)}, degree {args.degree}\n"
               f"occupied points per degree: {' '.join(map(str, report['layers']))}\n"
               f"stabilized at degree: {stab}\n"
               f"mismatches outside the 2h band: {cmp.mismatches} "
               f"({cmp.false_pos} false positive, {cmp.false_neg} false negative)\n"
               f"grid points in the band: {cmp.band_hits}\n"
               f"closure time: {elapsed:.2f} s\n", None)
    return EXIT_MISMATCH if cmp.mismatches else EXIT_OK


# render

def cmd_render(args):
    wells, labels, chart = _setup(args.input)
    if args.kind == "lam":
        region = hull_lamination(wells, chart)
    elif args.kind == "convex":
        region = convex_region(dedupe_points(_planar(wells, chart), chart.geo_tol), chart)
    else:
        result = quasiconvex_hull(wells)
        region = result.region if isinstance(result, Exact) else result.inner
    svg = render_svg(wells, region, chart, labels=labels)
    _write(svg, args.svg)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="lamhull",
        description="Symmetric lamination and quasiconvex hulls of coplanar 2x2 symmetric wells.")
    p.add_argument("--version", action="version", version=f"lamhull {__version__}")
    p.add_argument("--tol", type=float, default=tolerance.DEFAULT_TOL,
                   help="relative tolerance for sign decisions (default 1e-9)")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        s = sub.add_parser(name, help=help_text, description=help_text)
        s.add_argument("input", help="well set (JSON, or CSV with a .csv suffix)")
        s.set_defaults(func=func)
        return s

    s = add("classify", cmd_classify, "report the compatibility structure of a well set")
    s.add_argument("--json", action="store_true", help="machine-readable output")

    s = add("hull", cmd_hull, "compute a hull and write it as a region file")
    s.add_argument("--kind", choices=("lam", "convex", "quasi"), default="lam")
    s.add_argument("--out", help="output path (default: standard output)")

    s = add("certify", cmd_certify, "decide membership of a point or matrix")
    q = s.add_mutually_exclusive_group(required=True)
    q.add_argument("--point", metavar="XI,ETA", help="planar coordinates on the chart")
    q.add_argument("--matrix", metavar="A11,A12,A22", help="a symmetric matrix on the plane")
    s.add_argument("--json", action="store_true", help="machine-readable output")

    s = add("oracle", cmd_oracle, "compare the lamination hull with a grid closure")
    s.add_argument("--grid", type=int, default=200, help="grid points along the longer side")
    s.add_argument("--degree", type=int, default=3, help="lamination degrees to compute")
    s.add_argument("--json", action="store_true", help="machine-readable output")

    s = add("render", cmd_render, "draw a hull as SVG")
    s.add_argument("--svg", required=True, help="output SVG path")
    s.add_argument("--kind", choices=("lam", "convex", "quasi"), default="lam")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    old = tolerance.get_tol()
    try:
        tolerance.set_tol(args.tol)
    except ValueError as e:
        parser.error(str(e))
    try:
        return args.func(args)
    except _Fail as e:
        print(f"lamhull: {e}", file=sys.stderr)
        return e.code
    finally:
        tolerance.set_tol(old)

