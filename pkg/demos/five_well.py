"""A five-well set: the lamination hull is the union of three triple hulls.

The chart axes are not orthogonal here (their Frobenius inner product is
1/2), which the picture reproduces by drawing in the Gram metric.
"""
from pathlib import Path

import numpy as np

from lamhull.chart import make_frame
from lamhull.corpus import five_well
from lamhull.lamination import _planar, hull_lamination, hull_three
from lamhull.quasiconvex import rank_one_pairs
from lamhull.regions import Membership, Region, membership_many, sample_cell
from lamhull.render import render_svg
from lamhull.symmat import frobenius_inner

OUT = Path(__file__).resolve().parent / "out"

wells = five_well()
c = make_frame(wells)
print("directions:", c.dir_a, c.dir_n, "inner product", frobenius_inner(c.dir_a, c.dir_n))
print("planar wells:", [tuple(round(x, 12) + 0.0 for x in p) for p in _planar(wells, c)])
print("rank-one pairs:", [(f"U{i + 1}", f"U{j + 1}") for i, j in rank_one_pairs(wells, c)])

lam = hull_lamination(wells, c)
named = [(0, 1, 4), (1, 2, 3), (1, 3, 4)]
union = Region([cell for t in named for cell in hull_three([wells[i] for i in t], c).cells], c)
rng = np.random.default_rng(0)
missed = 0
for a, b in ((lam, union), (union, lam)):
    for cell in a.cells:
        pts = sample_cell(cell, 500, rng)
        missed += int(np.sum(membership_many(pts, b, 1e-9) == Membership.OUTSIDE))
print("L^e against the union of {U1,U2,U5}, {U2,U3,U4}, {U2,U4,U5}:",
      "equal on all samples" if missed == 0 else f"{missed} disagreements")

OUT.mkdir(exist_ok=True)
(OUT / "five-well.svg").write_text(render_svg(wells, lam, c))
print("picture written to", OUT / "five-well.svg")
