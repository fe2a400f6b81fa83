"""Random instance generators shared by the test modules."""
from itertools import combinations
import math

import numpy as np

from lamhull.chart import PlanarPoint, chart_from_normal, make_frame
from lamhull.lamination import _collinear
from lamhull.quasiconvex import BasicDecomposition
from lamhull.symmat import Sym2, determinant, frobenius_inner


def random_sym(rng, scale=3.0):
    return Sym2(*(rng.uniform(-scale, scale, 3)))


def random_rotation(rng):
    t = rng.uniform(0, 2 * math.pi)
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


def random_indefinite_normal(rng):
    while True:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        q = Sym2.from_vector(v)
        if determinant(q) < -0.05:
            return q


def random_chart(rng):
    q = random_indefinite_normal(rng)
    base = random_sym(rng)
    return chart_from_normal(q, frobenius_inner(q, base), base, max(1.0, base.norm()))


def lift(points, chart):
    return [chart.from_planar(p) for p in points]


def random_planar(rng, n, spread=4.0, integer=False):
    if integer:
        pts = rng.integers(-6, 7, size=(n, 2)).astype(float)
    else:
        pts = rng.uniform(-spread, spread, size=(n, 2))
    return [tuple(map(float, p)) for p in pts]


def general_position(pts, chart, min_gap=1e-3):
    """No coincident points, no collinear triples, no near-rank-one pairs."""
    for p, q in combinations(pts, 2):
        if min(abs(p[0] - q[0]), abs(p[1] - q[1])) < min_gap:
            return False
    return not any(_collinear(t, chart) for t in combinations(pts, 3))


def random_well_set(rng, n, integer=False):
    """Coplanar wells in general position and the frame built from them."""
    while True:
        c = random_chart(rng)
        pts = random_planar(rng, n, integer=integer)
        if integer or general_position(pts, c):
            wells = lift(pts, c)
            frame = make_frame(wells)
            if frame.rank_one:
                return wells, frame


def random_staircase(rng, max_blocks=5):
    """Planar wells of a random basic configuration.

    Returns ``(points, names)`` where ``names`` label each point with its
    staircase slot.  The first and last end wells are dropped at random.
    """
    while True:
        blocks = int(rng.integers(1, max_blocks + 1))
        alphas = tuple(float(x) for x in rng.uniform(0.3, 3.0, blocks + 1))
        betas = tuple(float(x) for x in rng.uniform(0.3, 3.0, blocks + 1))
        m0 = PlanarPoint(*map(float, rng.uniform(-3, 3, 2)))
        missing = []
        if rng.random() < 0.5:
            missing.append(str(rng.choice(["V1", "W1"])))
        if rng.random() < 0.5:
            missing.append(str(rng.choice([f"V{blocks + 1}", f"W{blocks + 1}"])))
        d = BasicDecomposition(m0, alphas, betas, tuple(missing))
        slots = [(name, p) for name, p in d.slots() if name not in missing]
        if len(slots) < 3:
            continue
        pts = [p for _, p in slots]
        if any(abs((b[0] - a[0]) * (e[1] - a[1]) - (b[1] - a[1]) * (e[0] - a[0])) < 1e-3
               for a, b, e in combinations(pts, 3)):
            continue
        return d, slots
