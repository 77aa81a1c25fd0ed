"""Exception hierarchy shared across the package."""


class PolyangleError(Exception):
    """Base class for all polyangle errors."""


class NonConvexInput(PolyangleError):
    """Polygon vertices are not strictly convex in counter-clockwise order."""


class DegenerateInput(PolyangleError):
    """Region parameters describe a degenerate shape (zero area, n < 3, side <= 0)."""


class PredictionOnlyShape(PolyangleError):
    """The circle limit carries no geometry; it cannot be built, sampled or integrated."""


class DegenerateApex(PolyangleError):
    """Apex coincides with a base vertex, where the triangle angle is undefined."""


class EmptyGrid(PolyangleError):
    """No lattice point of the requested grid falls inside the region."""


class InvalidN(PolyangleError):
    """Side count outside the supported range (n >= 3, or the circle limit)."""


class RegionParseError(PolyangleError):
    """Region specification string does not match the grammar."""
