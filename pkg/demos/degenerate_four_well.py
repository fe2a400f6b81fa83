"""Moving two wells onto rank-one lines makes the quasiconvex hull computable.

The four-well theorem applies (two disjoint rank-one pairs), so Q^e equals
L^e, which is strictly smaller than the convex hull.  Points in between are
excluded by explicit separation witnesses.
"""
from lamhull.corpus import degenerate_four_well
from lamhull.lamination import _planar
from lamhull.quasiconvex import quasiconvex_hull, separation_certificate, verify_certificate
from lamhull.regions import membership, Membership

wells = degenerate_four_well()
r = quasiconvex_hull(wells)
c = r.chart
cert = r.certificate
print(f"certificate: {cert.kind.value}, condition {cert.condition}, rank-one pairs {cert.pairs}")
print("certificate re-verified:", verify_certificate(cert, wells, c))
d = cert.decomposition
print(f"also a basic configuration: M0 = {tuple(d.m0)}, alphas {d.alphas}, betas {d.betas}, "
      f"missing {d.missing}")

pts = _planar(wells, c)
for m in [(-1.0, -0.7), (-0.5, -0.4), (-1.5, -3.6), (-1.0, -2.0)]:
    inside = membership(m, r.region, 1e-9) is not Membership.OUTSIDE
    w = separation_certificate(m, pts, c, d)
    if inside:
        print(f"{m}: in Q^e")
    elif w is not None:
        print(f"{m}: excluded, det(M - U0) = {w.excluded_det:g} < 0 with U0 = "
              f"{c.from_planar(w.anchor)}, min det(U_i - U0) = {min(w.margins):g}")
    else:
        print(f"{m}: outside, no witness among the candidates")
