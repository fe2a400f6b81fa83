"""Global relative tolerance used by every sign decision.

All determinant tests compare against ``TOL * scale**2`` and all planar
distance tests against ``TOL * scale``, where ``scale`` is the largest
Frobenius norm involved (at least 1).
"""
from contextlib import contextmanager

DEFAULT_TOL = 1e-9

TOL = DEFAULT_TOL


def set_tol(value):
    global TOL
    if not value > 0:
        raise ValueError("tolerance must be positive")
    TOL = float(value)


def get_tol():
    return TOL


@contextmanager
def tolerance(value):
    """Temporarily override the global tolerance."""
    old = TOL
    set_tol(value)
    try:
        yield
    finally:
        set_tol(old)


def det_tol(scale=1.0):
    return TOL * max(1.0, scale) ** 2


def geo_tol(scale=1.0):
    return TOL * max(1.0, scale)
