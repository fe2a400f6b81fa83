"""Well-set and region files.

Floats are written with 17 significant digits so that a write, read, write
cycle reproduces the bytes exactly.
"""
import csv
import io
import json
import math

from . import tolerance
from .chart import AffineFrame, Chart, PlanarPoint
from .errors import HullError
from .quasiconvex import BasicDecomposition, Bounds, Certificate, CertificateKind, Exact
from .regions import ConvexCell, Region
from .symmat import Sym2

FORMAT_VERSION = 1


class ParseError(HullError):
    pass


# serialization

def format_float(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _emit(obj, indent, depth, out):
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(key)}: ")
            _emit(value, indent, depth + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[\n")
        for k, value in enumerate(obj):
            out.append(pad)
            _emit(value, indent, depth + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        out.append(_scalar(obj))


def _scalar(v):
    if v is None or isinstance(v, (bool, str)):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    return format_float(v)


def dumps(obj, indent=2):
    """Deterministic JSON text; floats always carry 17 significant digits."""
    out = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


# well sets

def _number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value")
    return float(v)


def parse_wells(text):
    """Parse a well-set JSON document into ``(wells, labels)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("wells"), list):
        raise ParseError('expected an object with a "wells" list')
    raw = doc["wells"]
    if not raw:
        raise ParseError("the well list is empty")
    wells = []
    for k, w in enumerate(raw):
        if not isinstance(w, dict):
            raise ParseError(f"wells[{k}]: expected an object")
        try:
            wells.append(Sym2(*(_number(w[key], f"wells[{k}].{key}")
                                for key in ("a11", "a12", "a22"))))
        except KeyError as e:
            raise ParseError(f"wells[{k}]: missing entry {e}") from None
    labels = doc.get("labels")
    if labels is None:
        labels = [f"U{k + 1}" for k in range(len(wells))]
    elif (not isinstance(labels, list) or len(labels) != len(wells)
          or not all(isinstance(s, str) for s in labels)):
        raise ParseError("labels must be a list of strings, one per well")
    return wells, list(labels)


def parse_wells_csv(text):
    """Rows ``a11,a12,a22[,label]``; a header row is optional."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and rows[0][0].strip().lower() == "a11":
        rows = rows[1:]
    if not rows:
        raise ParseError("no wells in CSV input")
    wells, labels = [], []
    for k, row in enumerate(rows):
        if len(row) not in (3, 4):
            raise ParseError(f"row {k + 1}: expected 3 or 4 columns")
        try:
            values = [float(c) for c in row[:3]]
        except ValueError:
            raise ParseError(f"row {k + 1}: non-numeric entry") from None
        if not all(math.isfinite(v) for v in values):
            raise ParseError(f"row {k + 1}: non-finite entry")
        wells.append(Sym2(*values))
        labels.append(row[3].strip() if len(row) == 4 else f"U{k + 1}")
    return wells, labels


def read_wells(path):
    with open(path, encoding="utf-8") as f:
        text = f.read()
    if str(path).lower().endswith(".csv"):
        return parse_wells_csv(text)
    return parse_wells(text)


def wells_document(wells, labels=None):
    doc = {"wells": [{"a11": w.a11, "a12": w.a12, "a22": w.a22} for w in wells]}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


# regions

def _sym(u):
    return {"a11": u.a11, "a12": u.a12, "a22": u.a22}


def _unsym(d):
    return Sym2(d["a11"], d["a12"], d["a22"])


def chart_document(c):
    doc = {"normal": _sym(c.normal), "offset": c.offset, "base": _sym(c.base),
           "dir_a": _sym(c.dir_a), "dir_n": _sym(c.dir_n),
           "cross_factor": c.cross_factor, "scale": c.scale}
    if c.rank_one:
        doc["vec_a"] = list(c.vec_a)
        doc["vec_n"] = list(c.vec_n)
    return doc


def chart_from_document(d):
    common = dict(normal=_unsym(d["normal"]), offset=float(d["offset"]), base=_unsym(d["base"]),
                  dir_a=_unsym(d["dir_a"]), dir_n=_unsym(d["dir_n"]), scale=float(d["scale"]))
    if d.get("cross_factor") is None:
        return AffineFrame(**common)
    return Chart(cross_factor=float(d["cross_factor"]), vec_a=tuple(d["vec_a"]),
                 vec_n=tuple(d["vec_n"]), **common)


def cells_document(region):
    return [{"vertices": [[v.xi, v.eta] for v in cell.vertices]} for cell in region.cells]


def _cells(raw):
    return [ConvexCell([PlanarPoint(float(x), float(y)) for x, y in c["vertices"]]) for c in raw]


def decomposition_document(d):
    return {"m0": list(d.m0), "alphas": list(d.alphas), "betas": list(d.betas),
            "missing": list(d.missing), "centers": [list(p) for p in d.centers]}


def certificate_document(cert):
    return {
        "kind": cert.kind.value,
        "condition": cert.condition,
        "witnesses": [list(w) for w in cert.witnesses],
        "pairs": [list(p) for p in cert.pairs],
        "decomposition": (decomposition_document(cert.decomposition)
                          if cert.decomposition else None),
    }


def certificate_from_document(d):
    dec = d.get("decomposition")
    if dec is not None:
        dec = BasicDecomposition(m0=PlanarPoint(*map(float, dec["m0"])),
                                 alphas=tuple(map(float, dec["alphas"])),
                                 betas=tuple(map(float, dec["betas"])),
                                 missing=tuple(dec["missing"]))
    return Certificate(kind=CertificateKind(d["kind"]),
                       witnesses=tuple(PlanarPoint(float(x), float(y)) for x, y in d["witnesses"]),
                       condition=d.get("condition"),
                       pairs=tuple(tuple(p) for p in d["pairs"]),
                       decomposition=dec)


def region_document(region, kind, certificate=None, outer=None, version="0.1.0"):
    doc = {
        "format": FORMAT_VERSION,
        "chart": chart_document(region.chart),
        "cells": cells_document(region),
        "certificate": certificate_document(certificate) if certificate else None,
    }
    if outer is not None:
        doc["outer_cells"] = cells_document(outer)
    doc["metadata"] = {"tool": "lamhull", "version": version, "kind": kind,
                       "tol": tolerance.get_tol()}
    return doc


def result_document(result, version="0.1.0"):
    """Region document for a quasiconvex-hull result (exact or bounds)."""
    if isinstance(result, Exact):
        return region_document(result.region, "quasi", result.certificate, version=version)
    if isinstance(result, Bounds):
        return region_document(result.inner, "quasi-bounds", outer=result.outer, version=version)
    raise TypeError(f"unexpected result {result!r}")


def parse_region(text):
    """Return ``(region, certificate, outer, metadata)`` from a region file."""
    try:
        doc = json.loads(text)
        chart = chart_from_document(doc["chart"])
        region = Region(_cells(doc["cells"]), chart)
        cert = doc.get("certificate")
        cert = certificate_from_document(cert) if cert else None
        outer = Region(_cells(doc["outer_cells"]), chart) if "outer_cells" in doc else None
        return region, cert, outer, doc.get("metadata", {})
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"invalid region file: {e}") from None


def region_roundtrip(text):
    """Re-serialize a region file through the in-memory types."""
    region, cert, outer, meta = parse_region(text)
    doc = region_document(region, meta.get("kind", "lam"), cert, outer,
                          version=meta.get("version", "0.1.0"))
    doc["metadata"]["tol"] = meta.get("tol", doc["metadata"]["tol"])
    return dumps(doc)
