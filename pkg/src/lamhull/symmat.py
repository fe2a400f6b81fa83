"""Algebra and compatibility predicates for 2x2 symmetric matrices.

A well is stored as the three independent entries ``(a11, a12, a22)`` of
``[[a11, a12], [a12, a22]]``.  Two symmetric matrices are *compatible* when
their difference has non-positive determinant, *rank-one compatible* when
that determinant vanishes, and *incompatible* otherwise.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from . import tolerance

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Sym2:
    a11: float
    a12: float
    a22: float

    def __post_init__(self):
        for name in ("a11", "a12", "a22"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 1.0)

    @classmethod
    def diag(cls, d1, d2):
        return cls(d1, 0.0, d2)

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], 0.5 * (m[0, 1] + m[1, 0]), m[1, 1])

    @classmethod
    def from_vector(cls, v):
        """Inverse of :meth:`vector`."""
        return cls(v[0], v[1] / SQRT2, v[2])

    @classmethod
    def outer(cls, v):
        """The rank-one matrix ``v (x) v``."""
        return cls(v[0] * v[0], v[0] * v[1], v[1] * v[1])

    @classmethod
    def sym_outer(cls, a, b):
        """Symmetrised tensor product ``(a (x) b + b (x) a) / 2``."""
        return cls(a[0] * b[0], 0.5 * (a[0] * b[1] + a[1] * b[0]), a[1] * b[1])

    def matrix(self):
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])

    def vector(self):
        # isometry Sym2 -> R^3 for the Frobenius product
        return np.array([self.a11, SQRT2 * self.a12, self.a22])

    def norm(self):
        return math.sqrt(frobenius_inner(self, self))

    def trace(self):
        return self.a11 + self.a22

    def __add__(self, other):
        return Sym2(self.a11 + other.a11, self.a12 + other.a12, self.a22 + other.a22)

    def __sub__(self, other):
        return Sym2(self.a11 - other.a11, self.a12 - other.a12, self.a22 - other.a22)

    def __neg__(self):
        return Sym2(-self.a11, -self.a12, -self.a22)

    def __mul__(self, s):
        return Sym2(s * self.a11, s * self.a12, s * self.a22)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return Sym2(self.a11 / s, self.a12 / s, self.a22 / s)

    def conjugate(self, r):
        """Return ``R U R^T`` for a 2x2 matrix ``R``."""
        r = np.asarray(r, dtype=float)
        return Sym2.from_matrix(r @ self.matrix() @ r.T)

    def close_to(self, other, atol=1e-9):
        return (abs(self.a11 - other.a11) <= atol and abs(self.a12 - other.a12) <= atol
                and abs(self.a22 - other.a22) <= atol)


class Relation(Enum):
    INCOMPATIBLE = "incompatible"
    STRICTLY_COMPATIBLE = "strictly-compatible"
    RANK_ONE = "rank-one"

    @property
    def compatible(self):
        return self is not Relation.INCOMPATIBLE


def frobenius_inner(u, v):
    return u.a11 * v.a11 + 2.0 * u.a12 * v.a12 + u.a22 * v.a22


def determinant(u):
    return u.a11 * u.a22 - u.a12 * u.a12


def pair_det_tol(u, v):
    """Determinant tolerance for a pair: ``TOL * max(1, |U|^2, |V|^2)``."""
    return tolerance.det_tol(max(u.norm(), v.norm()))


def compatibility(u, v):
    """Classify the pair ``(u, v)``; symmetric in its arguments."""
    d = determinant(v - u)
    tau = pair_det_tol(u, v)
    if abs(d) <= tau:
        return Relation.RANK_ONE
    if d > 0:
        return Relation.INCOMPATIBLE
    return Relation.STRICTLY_COMPATIBLE


def in_incompatible_cone(v, u):
    """True iff ``|V - U| < |<V - U, Id>|``, i.e. ``V`` lies in the open
    incompatible cone with vertex ``U``.

    The strict inequality is decided on squares, ``tr^2 - |D|^2``, with the
    same tolerance band as :func:`compatibility` (the squared gap is exactly
    twice the determinant of ``D``).
    """
    d = v - u
    gap = d.trace() ** 2 - frobenius_inner(d, d)
    return gap > 2.0 * pair_det_tol(u, v)
