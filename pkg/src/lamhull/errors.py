"""Exception types raised across the package."""


class HullError(Exception):
    """Base class for every error raised by lamhull."""


class NotCoplanar(HullError):
    pass


class DegenerateSpan(HullError):
    """Well differences span fewer than two dimensions."""


class NotIndefinite(HullError):
    pass


class PositiveNormal(HullError):
    """The plane normal has det >= 0, so every pair of wells is compatible."""


class OffPlane(HullError):
    pass


class DegenerateTriple(HullError):
    pass


class AnchorAmbiguous(HullError):
    pass


class AnchorNotFound(HullError):
    pass


class WrongArity(HullError):
    pass


class GridTooCoarse(HullError):
    pass
