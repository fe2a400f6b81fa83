"""Four wells whose lamination hull is four triangles through +Id and -Id.

The quasiconvex hull is not decided by any of the implemented criteria, so
the result is the pair of bounds L^e <= Q^e <= C.  A grid closure confirms
the lamination hull.
"""
from pathlib import Path

from lamhull.chart import make_frame
from lamhull.corpus import four_well
from lamhull.lamination import classify_three, hull_lamination, _planar
from lamhull.oracle import compare_regions, grid_for, lamination_closure
from lamhull.quasiconvex import quasiconvex_hull
from lamhull.render import render_svg

OUT = Path(__file__).resolve().parent / "out"

wells = four_well()
c = make_frame(wells)
print("plane normal:", c.normal)
for w, p in zip(wells, _planar(wells, c)):
    print(f"  {w}  ->  ({p.xi:g}, {p.eta:g})")

u1, u2, u3, u4 = wells
for name, triple in (("{U1,U2,U4}", [u1, u2, u4]), ("{U2,U3,U4}", [u2, u3, u4])):
    anchor = classify_three(triple, c).anchor
    print(f"anchor of {name}: {c.from_planar(anchor)}")

lam = hull_lamination(wells, c)
print(f"L^e has {len(lam.cells)} cells, total area "
      f"{sum(cell.area() for cell in lam.cells):g}")
r = quasiconvex_hull(wells)
print("quasiconvex hull:", "exact" if r.exact else "bounds only (L^e inside Q^e inside C)")

pts = _planar(wells, c)
g = grid_for(pts, 200)
cr = lamination_closure(pts, g, 3)
cmp = compare_regions(lam, cr, g)
print(f"grid closure: stabilized at degree {cr.stabilized_at}, "
      f"{cmp.mismatches} mismatches outside the 2h band")

OUT.mkdir(exist_ok=True)
(OUT / "four-well.svg").write_text(render_svg(wells, lam, c))
print("picture written to", OUT / "four-well.svg")
