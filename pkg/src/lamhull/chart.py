"""Coplanar well sets and the rank-one chart of their plane.

When the wells lie on an affine plane whose normal ``Q`` has ``det Q < 0``
the plane is spanned by two rank-one directions ``a_perp (x) a_perp`` and
``n_perp (x) n_perp``.  In the coordinates ``(xi, eta)`` along these
directions the determinant of a difference factorises,

    det(U - V) = (xi_U - xi_V) * (eta_U - eta_V) * |a x n|^2,

so compatibility reduces to a sign test on coordinate differences.
"""
from dataclasses import dataclass
from enum import Enum
import math
from typing import NamedTuple

import numpy as np

from . import tolerance
from .errors import DegenerateSpan, NotCoplanar, NotIndefinite, OffPlane, PositiveNormal
from .symmat import Sym2, determinant, frobenius_inner

# the plane residual tolerance is an order looser than the det tolerance
PLANE_FACTOR = 10.0

_DET_FORM = np.array([[0.0, 0.0, 0.5], [0.0, -0.5, 0.0], [0.5, 0.0, 0.0]])


class PlanarPoint(NamedTuple):
    xi: float
    eta: float


def well_scale(wells):
    return max([1.0] + [w.norm() for w in wells])


def _canonical_sign(v, eps=1e-12):
    """Flip ``v`` so that its first non-negligible component is positive."""
    for c in v:
        if abs(c) > eps:
            return v if c > 0 else -v
    return v


def _plane_tol(scale):
    return PLANE_FACTOR * tolerance.geo_tol(scale)


def _fit(wells):
    X = np.array([w.vector() for w in wells])
    centroid = X.mean(axis=0)
    _, s, vt = np.linalg.svd(X - centroid)
    s = np.concatenate([s, np.zeros(3 - len(s))])
    return centroid, s, vt


def fit_plane(wells):
    """Fit the affine plane ``<Q, U> = delta`` through ``wells``.

    Returns ``(normal, offset)`` with unit-norm ``normal``.  Raises
    :class:`DegenerateSpan` when the differences span less than a plane
    and :class:`NotCoplanar` when some well is off the fitted plane.
    """
    wells = list(wells)
    scale = well_scale(wells)
    tau = _plane_tol(scale)
    if len(wells) < 3:
        raise DegenerateSpan(f"{len(wells)} wells cannot determine a plane")
    centroid, s, vt = _fit(wells)
    if s[1] <= tau:
        raise DegenerateSpan("well differences span fewer than two dimensions")
    q = _canonical_sign(vt[2])
    normal = Sym2.from_vector(q)
    offset = float(q @ centroid)
    residual = max(abs(frobenius_inner(normal, w) - offset) for w in wells)
    if residual > tau:
        raise NotCoplanar(f"wells deviate from the best plane by {residual:.3g}")
    return normal, offset


def normal_for_degenerate(wells):
    """A unit normal with ``det < 0`` for wells spanning a point or a line.

    The orthogonal complement of the span contains indefinite directions
    (the determinant form has signature (1, 2)); pick the most indefinite.
    """
    wells = list(wells)
    if len(wells) == 1:
        basis = np.eye(3)
    else:
        _, s, vt = _fit(wells)
        rank = int(np.sum(s > _plane_tol(well_scale(wells))))
        if rank >= 2:
            raise ValueError("wells span a plane; use fit_plane")
        basis = vt[rank:].T
    form = basis.T @ _DET_FORM @ basis
    vals, vecs = np.linalg.eigh(form)
    q = basis @ vecs[:, 0]
    q = _canonical_sign(q / np.linalg.norm(q))
    normal = Sym2.from_vector(q)
    return normal, frobenius_inner(normal, wells[0])


def split_normal(q):
    """Factor an indefinite normal as ``Q ∝ a ⊙ n`` with unit ``a``, ``n``.

    With ``Q = l1 e1 e1^T + l2 e2 e2^T`` and ``l1 > 0 > l2``,
    ``a ∝ sqrt(l1) e1 + sqrt(-l2) e2`` and ``n ∝ sqrt(l1) e1 - sqrt(-l2) e2``.
    """
    if determinant(q) >= -tolerance.det_tol(q.norm()):
        raise NotIndefinite(f"det Q = {determinant(q):.3g} is not negative")
    vals, vecs = np.linalg.eigh(q.matrix())
    l2, l1 = vals
    e1 = vecs[:, 1]
    if e1[0] < 0 or (e1[0] == 0 and e1[1] < 0):
        e1 = -e1
    e2 = np.array([-e1[1], e1[0]])
    s, t = math.sqrt(l1), math.sqrt(-l2)
    a = s * e1 + t * e2
    n = s * e1 - t * e2
    return a / np.linalg.norm(a), n / np.linalg.norm(n)


def perp(v):
    """Counter-clockwise rotation by pi/2."""
    return np.array([-v[1], v[0]])


def _generator_key(g):
    return (g[0], g[1])


def _orient(g):
    if g[0] < -1e-12 or (abs(g[0]) <= 1e-12 and g[1] < 0):
        return -g
    return g


class _Frame:
    """Shared coordinate machinery for planes of symmetric matrices."""

    def _solve(self, d):
        a, n = self.dir_a, self.dir_n
        gram = np.array([[frobenius_inner(a, a), frobenius_inner(a, n)],
                         [frobenius_inner(a, n), frobenius_inner(n, n)]])
        rhs = np.array([frobenius_inner(a, d), frobenius_inner(n, d)])
        return np.linalg.solve(gram, rhs)

    def plane_residual(self, u):
        return frobenius_inner(self.normal, u) - self.offset

    def on_plane(self, u):
        return abs(self.plane_residual(u)) <= _plane_tol(max(self.scale, u.norm()))

    def to_planar(self, u):
        if not self.on_plane(u):
            raise OffPlane(f"matrix is {self.plane_residual(u):.3g} off the plane")
        xi, eta = self._solve(u - self.base)
        return PlanarPoint(float(xi), float(eta))

    def from_planar(self, p):
        return self.base + p[0] * self.dir_a + p[1] * self.dir_n

    @property
    def det_tol(self):
        return tolerance.det_tol(self.scale)

    @property
    def geo_tol(self):
        return tolerance.geo_tol(self.scale)

    def metric(self):
        """Gram matrix of the planar basis (Frobenius geometry of the plane)."""
        a, n = self.dir_a, self.dir_n
        c = frobenius_inner(a, n)
        return np.array([[frobenius_inner(a, a), c], [c, frobenius_inner(n, n)]])


@dataclass(frozen=True)
class Chart(_Frame):
    """Rank-one chart of a plane with indefinite normal."""

    normal: Sym2
    offset: float
    base: Sym2
    dir_a: Sym2
    dir_n: Sym2
    cross_factor: float
    vec_a: tuple
    vec_n: tuple
    scale: float = 1.0

    rank_one = True

    def planar_det(self, p, q):
        return (p[0] - q[0]) * (p[1] - q[1]) * self.cross_factor

    def compatible(self, p, q):
        return self.planar_det(p, q) <= self.det_tol

    def rank_one_pair(self, p, q):
        return abs(self.planar_det(p, q)) <= self.det_tol


@dataclass(frozen=True)
class AffineFrame(_Frame):
    """Orthonormal frame for a plane whose normal has ``det >= 0``.

    Every pair of points on such a plane is compatible, so no rank-one
    structure is needed; the frame only carries coordinates.
    """

    normal: Sym2
    offset: float
    base: Sym2
    dir_a: Sym2
    dir_n: Sym2
    scale: float = 1.0

    rank_one = False
    cross_factor = None

    def planar_det(self, p, q):
        return determinant(self.from_planar(p) - self.from_planar(q))

    def compatible(self, p, q):
        return self.planar_det(p, q) <= self.det_tol

    def rank_one_pair(self, p, q):
        return abs(self.planar_det(p, q)) <= self.det_tol


def chart_from_normal(normal, offset, base, scale=1.0):
    a, n = split_normal(normal)
    ga, gn = _orient(perp(a)), _orient(perp(n))
    if _generator_key(gn) > _generator_key(ga):
        ga, gn = gn, ga
    # a is recovered from its generator by a clockwise quarter turn
    a = np.array([ga[1], -ga[0]])
    n = np.array([gn[1], -gn[0]])
    cross = (a[0] * n[1] - a[1] * n[0]) ** 2
    return Chart(normal=normal, offset=offset, base=base,
                 dir_a=Sym2.outer(ga), dir_n=Sym2.outer(gn), cross_factor=float(cross),
                 vec_a=(float(a[0]), float(a[1])), vec_n=(float(n[0]), float(n[1])),
                 scale=scale)


def build_chart(wells):
    """Rank-one chart of the plane through ``wells``, based at the first well."""
    wells = list(wells)
    normal, offset = fit_plane(wells)
    if determinant(normal) >= -tolerance.det_tol(1.0):
        raise PositiveNormal(f"det Q = {determinant(normal):.3g} >= 0")
    return chart_from_normal(normal, offset, wells[0], well_scale(wells))


def _affine_frame(normal, offset, base, scale):
    q = normal.vector()
    _, _, vt = np.linalg.svd(q.reshape(1, 3))
    e1, e2 = (_canonical_sign(v) for v in vt[1:])
    return AffineFrame(normal=normal, offset=offset, base=base,
                       dir_a=Sym2.from_vector(e1), dir_n=Sym2.from_vector(e2), scale=scale)


def make_frame(wells):
    """Best coordinate frame for any coplanar well set.

    Full-rank sets with indefinite normal get a :class:`Chart`; sets whose
    normal has ``det >= 0`` get an :class:`AffineFrame`; sets spanning only a
    point or a line get a rank-one chart of some indefinite plane containing
    them.  Raises :class:`NotCoplanar` for genuinely non-coplanar input.
    """
    wells = list(wells)
    scale = well_scale(wells)
    try:
        normal, offset = fit_plane(wells)
    except DegenerateSpan:
        normal, offset = normal_for_degenerate(wells)
        return chart_from_normal(normal, offset, wells[0], scale)
    if determinant(normal) < -tolerance.det_tol(1.0):
        return chart_from_normal(normal, offset, wells[0], scale)
    return _affine_frame(normal, offset, wells[0], scale)


def to_planar(u, c):
    return c.to_planar(u)


def from_planar(p, c):
    return c.from_planar(p)


def planar_det(p, q, c):
    return c.planar_det(p, q)


class ConePart(Enum):
    UPPER = "upper"
    LOWER = "lower"
    INCOMPATIBLE = "incompatible-interior"
    ON_RAY = "on-ray"


def cone_part(v, u, tol=None):
    """Locate ``v`` relative to the planar compatible cone with vertex ``u``.

    The upper part is ``xi >= 0 >= eta``, the lower part ``eta >= 0 >= xi``.
    Points with a coordinate difference within ``tol`` of zero are on one of
    the boundary rays.
    """
    if tol is None:
        tol = tolerance.geo_tol(max(1.0, abs(u[0]), abs(u[1]), abs(v[0]), abs(v[1])))
    dx, dy = v[0] - u[0], v[1] - u[1]
    if abs(dx) <= tol or abs(dy) <= tol:
        return ConePart.ON_RAY
    if dx > 0 > dy:
        return ConePart.UPPER
    if dy > 0 > dx:
        return ConePart.LOWER
    return ConePart.INCOMPATIBLE
