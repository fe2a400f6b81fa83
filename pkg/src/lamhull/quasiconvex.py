"""When the symmetric quasiconvex hull equals the lamination hull.

The decision cascade tries, in order: pairwise compatibility, three wells
with a rank-one pair, the four-well conditions, and basic (staircase)
configurations.  Points of the convex hull can be excluded from the
quasiconvex hull by an anchor ``U0`` with ``det(V - U0) >= 0`` on every
well and ``det(M - U0) < 0``, since ``-det`` is symmetric quasiconvex.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .chart import PlanarPoint, make_frame
from .errors import WrongArity
from .lamination import (_collinear, _planar, classify_three, convex_region,
                         dedupe_points, hull_lamination, planar_relation)
from .regions import convex_hull_2d, relint_membership
from .symmat import Relation


class CertificateKind(Enum):
    PAIRWISE_COMPATIBLE = "pairwise-compatible"
    THREE_WELL_RANK_ONE = "three-well-rank-one"
    FOUR_WELL_CONDITION = "four-well-condition"
    BASIC_CONFIGURATION = "basic-configuration"


class NotApplicable(Enum):
    WEDGE = "wedge"
    ISOLATED_WELL = "isolated-well"
    TOO_FEW_RANK_ONE_PAIRS = "too-few-rank-one-pairs"
    EXCLUDED_ALIGNMENT = "excluded-alignment"


@dataclass(frozen=True)
class WedgeWitness:
    triple: tuple
    center: int


@dataclass(frozen=True)
class FourWellVerdict:
    """Outcome of the four-well test: ``condition`` in {1, 2, 3} or a reason."""

    condition: int = None
    reason: NotApplicable = None
    pairs: tuple = ()

    @property
    def applies(self):
        return self.condition is not None


@dataclass(frozen=True)
class BasicDecomposition:
    """Staircase data: ``V_i = M0 + sum_{j<i} (a_j, b_j) + (a_i, 0)`` and
    ``W_i = M0 + sum_{j<i} (a_j, b_j) + (0, b_i)`` for ``i = 1..n+1``.

    ``missing`` names the absent end wells among ``"V1"``, ``"W1"``,
    ``"V{n+1}"``, ``"W{n+1}"``; the increment of an absent end well is not
    determined by the wells, and is set equal to its block partner.
    """

    m0: PlanarPoint
    alphas: tuple
    betas: tuple
    missing: tuple = ()

    @property
    def blocks(self):
        return len(self.alphas) - 1

    def corner(self, k):
        """``S_k = M0 + sum_{j<=k} (a_j, b_j)``."""
        return PlanarPoint(self.m0[0] + sum(self.alphas[:k]), self.m0[1] + sum(self.betas[:k]))

    @property
    def centers(self):
        return tuple(self.corner(i) for i in range(1, self.blocks + 1))

    def slots(self):
        """``[(name, point)]`` for all ``2(n+1)`` staircase wells."""
        out = []
        for i in range(1, self.blocks + 2):
            s = self.corner(i - 1)
            out.append((f"V{i}", PlanarPoint(s[0] + self.alphas[i - 1], s[1])))
            out.append((f"W{i}", PlanarPoint(s[0], s[1] + self.betas[i - 1])))
        return out

    def wells(self):
        return [p for name, p in self.slots() if name not in self.missing]


@dataclass(frozen=True)
class AffineFunctional:
    """``l(p) = nu[0] * (xi - m0.xi) + nu[1] * (eta - m0.eta)``."""

    nu: tuple
    m0: PlanarPoint
    pair: tuple

    def __call__(self, p):
        return self.nu[0] * (p[0] - self.m0[0]) + self.nu[1] * (p[1] - self.m0[1])


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    witnesses: tuple = ()
    condition: int = None
    pairs: tuple = ()
    decomposition: BasicDecomposition = None


@dataclass(frozen=True)
class SeparationWitness:
    anchor: PlanarPoint
    margins: tuple
    excluded_det: float


@dataclass
class Exact:
    region: object
    certificate: Certificate
    chart: object = field(default=None, repr=False)

    exact = True


@dataclass
class Bounds:
    inner: object
    outer: object
    chart: object = field(default=None, repr=False)

    exact = False


def rank_one_pairs(wells, c):
    """Index pairs ``(i, j)``, ``i < j``, with vanishing planar determinant."""
    pts = _planar(wells, c)
    return [(i, j) for i, j in combinations(range(len(pts)), 2)
            if planar_relation(pts[i], pts[j], c) is Relation.RANK_ONE]


def _incompatible_pairs(pts, c):
    return [ij for ij in combinations(range(len(pts)), 2)
            if not c.compatible(pts[ij[0]], pts[ij[1]])]


def detect_wedge(wells, c):
    """A triple with one incompatible pair whose hull's relative interior
    holds the fourth well, rank-one compatible with both wells of that pair."""
    pts = _planar(wells, c)
    if len(pts) != 4:
        raise WrongArity(f"wedge test needs 4 wells, got {len(pts)}")
    for triple in combinations(range(4), 3):
        sub = [pts[i] for i in triple]
        bad = _incompatible_pairs(sub, c)
        if len(bad) != 1:
            continue
        center = next(i for i in range(4) if i not in triple)
        u0 = pts[center]
        p, r = (sub[k] for k in bad[0])
        if not (c.rank_one_pair(u0, p) and c.rank_one_pair(u0, r)):
            continue
        if relint_membership(u0, convex_hull_2d(sub), c.geo_tol):
            return WedgeWitness(triple=triple, center=center)
    return None


def _segments_meet(p, q, r, s, tol):
    """Closed segments ``[p, q]`` and ``[r, s]`` intersect (within ``tol``)."""
    def orient(a, b, d):
        v = (b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0])
        return 0 if abs(v) <= tol else (1 if v > 0 else -1)

    def on(a, b, d):
        return (min(a[0], b[0]) - tol <= d[0] <= max(a[0], b[0]) + tol
                and min(a[1], b[1]) - tol <= d[1] <= max(a[1], b[1]) + tol)

    o1, o2, o3, o4 = orient(p, q, r), orient(p, q, s), orient(r, s, p), orient(r, s, q)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and on(p, q, r)) or (o2 == 0 and on(p, q, s))
            or (o3 == 0 and on(r, s, p)) or (o4 == 0 and on(r, s, q)))


_UPPER_RAYS = {(1, 0), (0, -1)}
_LOWER_RAYS = {(-1, 0), (0, 1)}


def _ray(v, u, tol):
    dx, dy = v[0] - u[0], v[1] - u[1]
    if abs(dy) <= tol:
        return (1 if dx > 0 else -1, 0)
    if abs(dx) <= tol:
        return (0, 1 if dy > 0 else -1)
    return None


def _pair_condition(p1, p2, pts, c):
    shared = set(p1) & set(p2)
    tol = c.geo_tol
    if not shared:
        a, b = (pts[i] for i in p1)
        d, e = (pts[i] for i in p2)
        return 2 if _segments_meet(a, b, d, e, tol * max(1.0, c.scale)) else 1
    (v,) = shared
    ends = [next(i for i in p if i != v) for p in (p1, p2)]
    rays = {_ray(pts[i], pts[v], tol) for i in ends}
    if rays <= _UPPER_RAYS or rays <= _LOWER_RAYS:
        return 3
    return None


def four_well_condition(wells, c):
    """Check the standing hypotheses of the four-well theorem, then which of
    its three conditions holds for some choice of two rank-one pairs."""
    pts = _planar(wells, c)
    if len(pts) != 4:
        raise WrongArity(f"four-well test needs 4 wells, got {len(pts)}")
    for i in range(4):
        if not any(c.compatible(pts[i], pts[j]) for j in range(4) if j != i):
            return FourWellVerdict(reason=NotApplicable.ISOLATED_WELL)
    if detect_wedge(pts, c) is not None:
        return FourWellVerdict(reason=NotApplicable.WEDGE)
    r1 = rank_one_pairs(pts, c)
    if len(r1) < 2:
        return FourWellVerdict(reason=NotApplicable.TOO_FEW_RANK_ONE_PAIRS, pairs=tuple(r1))
    best = None
    for p1, p2 in combinations(r1, 2):
        k = _pair_condition(p1, p2, pts, c)
        if k is not None and (best is None or k < best[0]):
            best = (k, (p1, p2))
    if best is None:
        return FourWellVerdict(reason=NotApplicable.EXCLUDED_ALIGNMENT, pairs=tuple(r1))
    return FourWellVerdict(condition=best[0], pairs=best[1])


# basic configurations

def _close(p, q, tol):
    return abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol


def _lone_first(x, s1, tol):
    """Decompose a lone first-block well against the corner ``S_1``."""
    if abs(x[0] - s1[0]) <= tol and x[1] < s1[1] - tol:
        b = s1[1] - x[1]
        return "W1", b, b
    if abs(x[1] - s1[1]) <= tol and x[0] < s1[0] - tol:
        a = s1[0] - x[0]
        return "V1", a, a
    return None


def _lone_last(y, sn, tol):
    if abs(y[1] - sn[1]) <= tol and y[0] > sn[0] + tol:
        a = y[0] - sn[0]
        return "W", a, a
    if abs(y[0] - sn[0]) <= tol and y[1] > sn[1] + tol:
        b = y[1] - sn[1]
        return "V", b, b
    return None


def _try_layout(order, lone_first, lone_last, tol):
    body = order[1 if lone_first else 0: len(order) - (1 if lone_last else 0)]
    if len(body) % 2 or not body:
        return None
    corners, alphas, betas = [], [], []
    for k in range(0, len(body), 2):
        p, q = body[k], body[k + 1]
        v, w = (p, q) if p[0] > q[0] else (q, p)
        if not (v[0] - w[0] > tol and w[1] - v[1] > tol):
            return None
        lo, hi = PlanarPoint(w[0], v[1]), PlanarPoint(v[0], w[1])
        if corners and not _close(corners[-1], lo, tol):
            return None
        if not corners:
            corners.append(lo)
        corners.append(hi)
        alphas.append(v[0] - w[0])
        betas.append(w[1] - v[1])
    missing = []
    m0 = corners[0]
    if lone_first:
        got = _lone_first(order[0], corners[0], tol)
        if got is None:
            return None
        name, a, b = got
        missing.append(name)
        alphas.insert(0, a)
        betas.insert(0, b)
        m0 = PlanarPoint(corners[0][0] - a, corners[0][1] - b)
    if lone_last:
        got = _lone_last(order[-1], corners[-1], tol)
        if got is None:
            return None
        side, a, b = got
        alphas.append(a)
        betas.append(b)
        missing.append(f"{side}{len(alphas)}")
    if len(alphas) < 2:
        return None
    return BasicDecomposition(m0=m0, alphas=tuple(alphas), betas=tuple(betas),
                              missing=tuple(missing))


def _matches(d, pts, tol):
    rebuilt = d.wells()
    if len(rebuilt) != len(pts):
        return False
    used = set()
    for p in pts:
        hit = next((k for k, q in enumerate(rebuilt) if k not in used and _close(p, q, tol)), None)
        if hit is None:
            return False
        used.add(hit)
    return True


def detect_basic_configuration(wells, c):
    """Recover the staircase decomposition of a basic configuration, or None.

    Staircase wells sorted by ``xi + eta`` come in consecutive pairs
    ``{V_i, W_i}``; a missing end well leaves a lone well at that end.
    """
    pts = _planar(wells, c)
    if len(pts) < 3 or not getattr(c, "rank_one", False):
        return None
    if any(_collinear(t, c) for t in combinations(pts, 3)):
        return None
    tol = c.geo_tol * max(1.0, c.scale)
    order = sorted(pts, key=lambda p: (p[0] + p[1], p[0]))
    if len(pts) % 2:
        layouts = [(True, False), (False, True)]
    else:
        layouts = [(False, False), (True, True)]
    for first, last in layouts:
        d = _try_layout(order, first, last, tol)
        if d is not None and min(d.alphas + d.betas) > tol and _matches(d, pts, tol):
            return d
    return None


def supporting_functionals(d):
    """Affine functionals ``l >= 1`` and ``l_tilde <= 1`` on the wells of a
    basic configuration, each equal to 1 on a compatible pair of end wells."""
    a, b, n = d.alphas, d.betas, d.blocks
    if "V1" in d.missing:
        low = AffineFunctional((0.0, 1.0 / b[0]), d.m0, ("V2", "W1"))
    elif "W1" in d.missing:
        low = AffineFunctional((1.0 / a[0], 0.0), d.m0, ("V1", "W2"))
    else:
        low = AffineFunctional((1.0 / a[0], 1.0 / b[0]), d.m0, ("V1", "W1"))
    last = n + 1
    if f"V{last}" in d.missing:
        high = AffineFunctional((1.0 / sum(a[:n]), 0.0), d.m0, (f"V{n}", f"W{last}"))
    elif f"W{last}" in d.missing:
        high = AffineFunctional((0.0, 1.0 / sum(b[:n])), d.m0, (f"V{last}", f"W{n}"))
    else:
        an, bn = a[n], b[n]
        kappa = an * bn + sum(an * b[i] + bn * a[i] for i in range(n))
        high = AffineFunctional((bn / kappa, an / kappa), d.m0, (f"V{last}", f"W{last}"))
    return low, high


# separation

def separation_candidates(wells, c, extra=()):
    pts = _planar(wells, c)
    cands = {(p[0], q[1]) for p in pts for q in pts}
    cands.update((float(x[0]), float(x[1])) for x in extra)
    return [PlanarPoint(*x) for x in sorted(cands)]


def separation_certificate(m, wells, c, decomposition=None):
    """First candidate anchor excluding ``m`` from the quasiconvex hull.

    ``None`` is inconclusive: no candidate separates ``m``, which does not
    prove membership.
    """
    pts = _planar(wells, c)
    (mp,) = _planar([m], c)
    if decomposition is None and len(pts) >= 3:
        decomposition = detect_basic_configuration(pts, c)
    extra = decomposition.centers if decomposition else ()
    tau = c.det_tol
    for u0 in separation_candidates(pts, c, extra):
        excluded = c.planar_det(mp, u0)
        if excluded >= -tau:
            continue
        margins = tuple(c.planar_det(v, u0) for v in pts)
        if min(margins) >= -tau:
            return SeparationWitness(anchor=u0, margins=margins, excluded_det=excluded)
    return None


def verify_witness(w, m, wells, c):
    """Recompute both inequalities of a separation witness."""
    pts = _planar(wells, c)
    (mp,) = _planar([m], c)
    tau = c.det_tol
    return (all(c.planar_det(v, w.anchor) >= -tau for v in pts)
            and c.planar_det(mp, w.anchor) < -tau)


# the cascade

def _anchors(pts, c):
    out = []
    for t in combinations(pts, 3):
        cls = classify_three(t, c)
        if cls.anchor is not None and cls.anchor not in out:
            out.append(cls.anchor)
    return tuple(out)


def _all_compatible(pts, c):
    return all(c.compatible(p, q) for p, q in combinations(pts, 2))


def quasiconvex_hull(wells):
    """Exact symmetric quasiconvex hull with a certificate when a theorem
    applies, otherwise the bounds ``L^e <= Q^e <= C``."""
    wells = list(wells)
    c = make_frame(wells)
    pts = dedupe_points(_planar(wells, c), c.geo_tol)
    lam = hull_lamination(pts, c)
    if _all_compatible(pts, c):
        return Exact(convex_region(pts, c), Certificate(CertificateKind.PAIRWISE_COMPATIBLE), c)
    if not getattr(c, "rank_one", False) or len(pts) < 3:
        return Bounds(lam, convex_region(pts, c), c)
    decomposition = detect_basic_configuration(pts, c)
    r1 = tuple(rank_one_pairs(pts, c))
    if len(pts) == 3 and r1 and not _collinear(pts, c):
        cert = Certificate(CertificateKind.THREE_WELL_RANK_ONE, witnesses=_anchors(pts, c),
                           pairs=r1, decomposition=decomposition)
        return Exact(lam, cert, c)
    if len(pts) == 4:
        verdict = four_well_condition(pts, c)
        if verdict.applies:
            cert = Certificate(CertificateKind.FOUR_WELL_CONDITION, witnesses=_anchors(pts, c),
                               condition=verdict.condition, pairs=verdict.pairs,
                               decomposition=decomposition)
            return Exact(lam, cert, c)
    if decomposition is not None:
        cert = Certificate(CertificateKind.BASIC_CONFIGURATION, witnesses=decomposition.centers,
                           pairs=r1, decomposition=decomposition)
        return Exact(lam, cert, c)
    return Bounds(lam, convex_region(pts, c), c)


def _is_anchor(w, pts, c):
    """``w`` is rank-one compatible with both wells of an incompatible pair."""
    return any(c.rank_one_pair(w, pts[i]) and c.rank_one_pair(w, pts[j])
               for i, j in _incompatible_pairs(pts, c))


def verify_certificate(cert, wells, c):
    """Re-check the hypotheses named by ``cert`` from scratch."""
    pts = dedupe_points(_planar(wells, c), c.geo_tol)
    kind = cert.kind
    if kind is CertificateKind.PAIRWISE_COMPATIBLE:
        return _all_compatible(pts, c)
    if not all(_is_anchor(w, pts, c) for w in cert.witnesses):
        return False
    if kind is CertificateKind.THREE_WELL_RANK_ONE:
        return (len(pts) == 3 and not _collinear(pts, c) and bool(cert.pairs)
                and all(c.rank_one_pair(pts[i], pts[j]) for i, j in cert.pairs))
    if kind is CertificateKind.FOUR_WELL_CONDITION:
        if len(pts) != 4 or len(cert.pairs) != 2:
            return False
        if not all(c.rank_one_pair(pts[i], pts[j]) for i, j in cert.pairs):
            return False
        if detect_wedge(pts, c) is not None:
            return False
        if not all(any(c.compatible(pts[i], pts[j]) for j in range(4) if j != i)
                   for i in range(4)):
            return False
        return _pair_condition(*cert.pairs, pts, c) == cert.condition
    if kind is CertificateKind.BASIC_CONFIGURATION:
        d = cert.decomposition
        tol = c.geo_tol * max(1.0, c.scale)
        return (d is not None and min(d.alphas + d.betas) > 0 and _matches(d, pts, tol)
                and not any(_collinear(t, c) for t in combinations(pts, 3)))
    return False
