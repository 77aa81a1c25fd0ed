"""Planar regions sharing a base edge: construction, containment, uniform sampling.

Every region is brought into a canonical frame where the base edge runs from
(0, 0) to (d, 0) and the region lies in the closed upper half-plane.  The
canonical frame is what the angle formulas and all estimators assume.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DegenerateInput,
    NonConvexInput,
    PredictionOnlyShape,
    RegionParseError,
)

__all__ = [
    "Point",
    "BaseEdge",
    "RegularNGon",
    "ConvexPolygon",
    "CircleLimit",
    "RegionSpec",
    "Polygon",
    "Triangulation",
    "build_region",
    "area",
    "triangulate",
    "contains",
    "contains_points",
    "sample_uniform",
    "sample_points",
    "parse_region",
    "format_region",
]

# Containment tolerance, relative to the base edge length.
CONTAINS_RTOL = 1e-12


@dataclass(frozen=True)
class Point:
    """A point in the base-edge coordinate frame."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInput(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class BaseEdge:
    """The fixed triangle side, canonically placed from (0, 0) to (length, 0)."""

    length: float

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0.0):
            raise DegenerateInput(f"base edge length must be positive, got {self.length}")


@dataclass(frozen=True)
class RegularNGon:
    """Regular n-gon with one side as the base edge, polygon above it."""

    n: int
    side: float = 1.0


@dataclass(frozen=True)
class ConvexPolygon:
    """Arbitrary strictly convex CCW polygon with a designated base edge."""

    vertices: tuple[Point, ...]
    base_edge_index: int = 0


@dataclass(frozen=True)
class CircleLimit:
    """Prediction-only shape standing for the n -> infinity limit; no geometry."""


RegionSpec = Union[RegularNGon, ConvexPolygon, CircleLimit]


@dataclass(frozen=True)
class Polygon:
    """Canonical convex polygon: CCW vertices, base edge (0,0) -> (d,0), region in y >= 0."""

    vertices: tuple[Point, ...]
    base: BaseEdge


@dataclass(frozen=True)
class Triangulation:
    """Fan triangulation of a canonical polygon with cumulative areas for sampling."""

    polygon: Polygon
    triangles: tuple[tuple[int, int, int], ...]
    cumulative_areas: tuple[float, ...]
    total_area: float


def _regular_ngon_vertices(n: int, side: float) -> list[tuple[float, float]]:
    # Walk the boundary turning by the exterior angle; the base edge is exact
    # by construction and the upper vertices are mirrored about x = side/2 so
    # the polygon is exactly symmetric under x -> side - x.
    pts = [(0.0, 0.0)]
    x = y = 0.0
    for k in range(n - 1):
        ang = 2.0 * math.pi * k / n
        x += side * math.cos(ang)
        y += side * math.sin(ang)
        pts.append((x, y))
    for k in range(2, n):
        j = n + 1 - k
        if j == k:
            pts[k] = (0.5 * side, pts[k][1])
        elif j > k:
            pts[j] = (side - pts[k][0], pts[k][1])
    return pts


def _validate_convex_ccw(verts: tuple[Point, ...]) -> None:
    n = len(verts)
    for i in range(n):
        a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
        cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
        if cross <= 0.0:
            raise NonConvexInput(
                f"vertices must be strictly convex in CCW order; "
                f"cross product at vertex {(i + 1) % n} is {cross}"
            )


def build_region(spec: RegionSpec) -> Polygon:
    """Construct the canonical polygon for a region specification.

    Regular n-gons are built with the base side exactly on [(0,0), (side,0)];
    convex polygons are rigidly re-framed so the designated edge becomes the
    canonical base edge with the region above it.
    """
    if isinstance(spec, CircleLimit):
        raise PredictionOnlyShape("the circle limit has no geometry to build")

    if isinstance(spec, RegularNGon):
        if isinstance(spec.n, bool) or not isinstance(spec.n, int) or spec.n < 3:
            raise DegenerateInput(f"regular polygon needs integer n >= 3, got {spec.n!r}")
        if not (math.isfinite(spec.side) and spec.side > 0.0):
            raise DegenerateInput(f"regular polygon needs side > 0, got {spec.side!r}")
        pts = _regular_ngon_vertices(spec.n, float(spec.side))
        return Polygon(tuple(Point(x, y) for x, y in pts), BaseEdge(float(spec.side)))

    if isinstance(spec, ConvexPolygon):
        verts = tuple(spec.vertices)
        n = len(verts)
        if n < 3:
            raise DegenerateInput(f"polygon needs at least 3 vertices, got {n}")
        if not 0 <= spec.base_edge_index < n:
            raise DegenerateInput(
                f"base_edge_index {spec.base_edge_index} out of range for {n} vertices"
            )
        _validate_convex_ccw(verts)
        if _shoelace(verts) <= 0.0:
            raise DegenerateInput("polygon area must be positive")

        k = spec.base_edge_index
        ordered = verts[k:] + verts[:k]
        v0, v1 = ordered[0], ordered[1]
        d = math.hypot(v1.x - v0.x, v1.y - v0.y)
        ux, uy = (v1.x - v0.x) / d, (v1.y - v0.y) / d
        out = [Point(0.0, 0.0), Point(d, 0.0)]
        for p in ordered[2:]:
            dx, dy = p.x - v0.x, p.y - v0.y
            px = dx * ux + dy * uy
            py = dy * ux - dx * uy
            if py <= 0.0:
                raise DegenerateInput("region must lie strictly above its base edge")
            out.append(Point(px, py))
        return Polygon(tuple(out), BaseEdge(d))

    raise TypeError(f"not a region specification: {spec!r}")


def _shoelace(verts: tuple[Point, ...]) -> float:
    n = len(verts)
    return 0.5 * math.fsum(
        verts[i].x * verts[(i + 1) % n].y - verts[(i + 1) % n].x * verts[i].y
        for i in range(n)
    )


def area(polygon: Polygon) -> float:
    """Shoelace area of a canonical polygon."""
    return _shoelace(polygon.vertices)


def _triangle_area(a: Point, b: Point, c: Point) -> float:
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def triangulate(polygon: Polygon) -> Triangulation:
    """Fan triangulation anchored at vertex 0."""
    verts = polygon.vertices
    tris = tuple((0, i, i + 1) for i in range(1, len(verts) - 1))
    areas = []
    for (i, j, k) in tris:
        t = _triangle_area(verts[i], verts[j], verts[k])
        if t <= 0.0:
            raise DegenerateInput(f"degenerate fan triangle {(i, j, k)} with area {t}")
        areas.append(t)
    cumulative = []
    running = 0.0
    for t in areas:
        running += t
        cumulative.append(running)
    return Triangulation(polygon, tris, tuple(cumulative), cumulative[-1])


def _edges(polygon: Polygon):
    verts = polygon.vertices
    n = len(verts)
    for i in range(n):
        yield verts[i], verts[(i + 1) % n]


def contains(polygon: Polygon, p: Point) -> bool:
    """Closed-region containment via half-plane tests, tolerance 1e-12 * d."""
    tol = CONTAINS_RTOL * polygon.base.length
    for a, b in _edges(polygon):
        ex, ey = b.x - a.x, b.y - a.y
        cross = ex * (p.y - a.y) - ey * (p.x - a.x)
        if cross < -tol * math.hypot(ex, ey):
            return False
    return True


def contains_points(polygon: Polygon, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized containment test for coordinate arrays of equal shape."""
    tol = CONTAINS_RTOL * polygon.base.length
    mask = np.ones(np.broadcast(x, y).shape, dtype=bool)
    for a, b in _edges(polygon):
        ex, ey = b.x - a.x, b.y - a.y
        mask &= ex * (y - a.y) - ey * (x - a.x) >= -tol * math.hypot(ex, ey)
    return mask


def _corner_arrays(tri: Triangulation) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    verts = tri.polygon.vertices
    pts = np.array([[v.x, v.y] for v in verts])
    idx = np.array(tri.triangles, dtype=np.intp)
    return pts[idx[:, 0]], pts[idx[:, 1]], pts[idx[:, 2]]


def _map_barycentric(a, b, c, sqrt_u, v):
    w0 = 1.0 - sqrt_u
    w1 = sqrt_u * (1.0 - v)
    w2 = sqrt_u * v
    return w0[..., None] * a + w1[..., None] * b + w2[..., None] * c


def sample_uniform(triangulation: Triangulation, rng: np.random.Generator) -> Point:
    """Draw one point uniformly over the polygon.

    A triangle is chosen with probability proportional to its area, then the
    square-root barycentric map sends two unit uniforms into the triangle.
    Consumes exactly three draws from the stream.
    """
    t, u, v = rng.random(3)
    idx = bisect_right(triangulation.cumulative_areas, t * triangulation.total_area)
    idx = min(idx, len(triangulation.triangles) - 1)
    verts = triangulation.polygon.vertices
    i, j, k = triangulation.triangles[idx]
    a = np.array([verts[i].x, verts[i].y])
    b = np.array([verts[j].x, verts[j].y])
    c = np.array([verts[k].x, verts[k].y])
    su = math.sqrt(u)
    p = _map_barycentric(a, b, c, np.float64(su), np.float64(v))
    return Point(float(p[0]), float(p[1]))


def sample_points(triangulation: Triangulation, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw `count` uniform points as a (count, 2) array; three draws per point."""
    r = rng.random((count, 3))
    targets = r[:, 0] * triangulation.total_area
    cum = np.asarray(triangulation.cumulative_areas)
    idx = np.searchsorted(cum, targets, side="right")
    np.minimum(idx, len(triangulation.triangles) - 1, out=idx)
    a, b, c = _corner_arrays(triangulation)
    sqrt_u = np.sqrt(r[:, 1])
    # an exact-zero draw would collapse the point onto the fan anchor vertex
    sqrt_u[sqrt_u == 0.0] = 0.5
    return _map_barycentric(a[idx], b[idx], c[idx], sqrt_u, r[:, 2])


# ---------------------------------------------------------------------------
# Region specification string grammar (the CLI surface)
#
#   ngon:<n>[:<side>]      regular n-gon, side defaults to 1
#   square                 alias for ngon:4:1
#   poly:<x0>,<y0>;<x1>,<y1>;...[@<k>]   convex CCW polygon, base edge k (default 0)
#   circle                 prediction-only circle limit
# ---------------------------------------------------------------------------

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_POLY_PAIR = re.compile(rf"^({_NUM}),({_NUM})$")


def parse_region(text: str) -> RegionSpec:
    """Parse a region specification string; raises RegionParseError naming the bad token."""
    s = text.strip()
    if s == "square":
        return RegularNGon(4, 1.0)
    if s == "circle":
        return CircleLimit()
    if s.startswith("ngon:"):
        parts = s.split(":")
        if len(parts) not in (2, 3):
            raise RegionParseError(f"bad ngon spec {text!r}: expected ngon:<n>[:<side>]")
        try:
            n = int(parts[1])
        except ValueError:
            raise RegionParseError(f"bad ngon side count {parts[1]!r} in {text!r}") from None
        side = 1.0
        if len(parts) == 3:
            try:
                side = float(parts[2])
            except ValueError:
                raise RegionParseError(f"bad ngon side length {parts[2]!r} in {text!r}") from None
        return RegularNGon(n, side)
    if s.startswith("poly:"):
        body = s[len("poly:"):]
        base_index = 0
        if "@" in body:
            body, _, idx_text = body.rpartition("@")
            try:
                base_index = int(idx_text)
            except ValueError:
                raise RegionParseError(f"bad base edge index {idx_text!r} in {text!r}") from None
        points = []
        for token in body.split(";"):
            m = _POLY_PAIR.match(token.strip())
            if m is None:
                raise RegionParseError(f"bad vertex token {token!r} in {text!r}")
            points.append(Point(float(m.group(1)), float(m.group(2))))
        if len(points) < 3:
            raise RegionParseError(f"polygon needs at least 3 vertices in {text!r}")
        return ConvexPolygon(tuple(points), base_index)
    raise RegionParseError(f"unknown region {text!r}; see the `shapes` subcommand")


def format_region(spec: RegionSpec) -> str:
    """Canonical string form of a region specification (inverse of parse_region)."""
    if isinstance(spec, CircleLimit):
        return "circle"
    if isinstance(spec, RegularNGon):
        return f"ngon:{spec.n}:{spec.side:g}"
    if isinstance(spec, ConvexPolygon):
        body = ";".join(f"{p.x:g},{p.y:g}" for p in spec.vertices)
        return f"poly:{body}@{spec.base_edge_index}"
    raise TypeError(f"not a region specification: {spec!r}")
