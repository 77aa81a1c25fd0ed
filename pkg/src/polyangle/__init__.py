"""Mean triangle angles over a fixed base edge of a planar region.

The apex of the triangle is uniform over the region; the base edge is one
side of it.  Three independent estimators (lattice grid, Monte Carlo,
Gauss-Legendre triangle quadrature) evaluate the mean angles, and the
closed-form half-interior-angle prediction covers regular polygons and the
circle limit.
"""

from .angles import AngleTriple, SideLengths, angles_at, angles_xy, beta_polar_check, side_lengths
from .closed_form import Prediction, half_interior_angle, predict, symmetry_check
from .errors import (
    DegenerateApex,
    DegenerateInput,
    EmptyGrid,
    InvalidN,
    NonConvexInput,
    PolyangleError,
    PredictionOnlyShape,
    RegionParseError,
)
from .estimators import (
    DEFAULT_CHUNK_SIZE,
    EstimateResult,
    GridConfig,
    McConfig,
    QuadratureConfig,
    converge_sweep,
    grid_estimate,
    mc_estimate,
    quad_estimate,
)
from .geometry import (
    BaseEdge,
    CircleLimit,
    ConvexPolygon,
    Point,
    Polygon,
    RegionSpec,
    RegularNGon,
    Triangulation,
    area,
    build_region,
    contains,
    contains_points,
    format_region,
    parse_region,
    sample_points,
    sample_uniform,
    triangulate,
)
from .report import RunRecord, make_record, record_from_json, record_to_json

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # geometry
    "Point", "BaseEdge", "RegularNGon", "ConvexPolygon", "CircleLimit", "RegionSpec",
    "Polygon", "Triangulation", "build_region", "area", "triangulate",
    "contains", "contains_points", "sample_uniform", "sample_points",
    "parse_region", "format_region",
    # angles
    "SideLengths", "AngleTriple", "side_lengths", "angles_at", "beta_polar_check", "angles_xy",
    # estimators
    "GridConfig", "McConfig", "QuadratureConfig", "EstimateResult",
    "grid_estimate", "mc_estimate", "quad_estimate", "converge_sweep", "DEFAULT_CHUNK_SIZE",
    # closed form
    "Prediction", "predict", "symmetry_check", "half_interior_angle",
    # report
    "RunRecord", "make_record", "record_to_json", "record_from_json",
    # errors
    "PolyangleError", "NonConvexInput", "DegenerateInput", "PredictionOnlyShape",
    "DegenerateApex", "EmptyGrid", "InvalidN", "RegionParseError",
]
