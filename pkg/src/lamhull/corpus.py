"""Worked well sets used by tests, demos and the CLI golden files."""
from .symmat import Sym2


def four_well():
    return [Sym2.diag(1, 2), Sym2.diag(2, -1), Sym2.diag(-1, -2), Sym2.diag(-2, 1)]


def degenerate_four_well():
    """The four-well set with the two side wells moved onto rank-one lines."""
    return [Sym2.diag(1, 2), Sym2.diag(1, -1), Sym2.diag(-1, -2), Sym2.diag(-1, 1)]


def five_well():
    return [Sym2(0, 0, 2), Sym2(1, 1, 5), Sym2(2, 2, 6), Sym2(3, 3, 3), Sym2(2, 2, 0)]


CORPUS = {
    "four-well": four_well,
    "degenerate-four-well": degenerate_four_well,
    "five-well": five_well,
}


def labels(n):
    return [f"U{i + 1}" for i in range(n)]
