"""Symmetric lamination and quasiconvex hulls of coplanar 2x2 symmetric wells."""

__version__ = "0.1.0"

from .chart import AffineFrame, Chart, PlanarPoint, build_chart, fit_plane, make_frame
from .errors import HullError
from .lamination import classify_three, hull_lamination, triplet_hulls
from .quasiconvex import (Bounds, Exact, detect_basic_configuration, four_well_condition,
                          quasiconvex_hull, separation_certificate)
from .regions import ConvexCell, Membership, Region, membership
from .symmat import Relation, Sym2, compatibility

__all__ = [
    "AffineFrame", "Bounds", "Chart", "ConvexCell", "Exact", "HullError", "Membership",
    "PlanarPoint", "Region", "Relation", "Sym2", "build_chart", "classify_three",
    "compatibility", "detect_basic_configuration", "fit_plane", "four_well_condition",
    "hull_lamination", "make_frame", "membership", "quasiconvex_hull",
    "separation_certificate", "triplet_hulls",
]
