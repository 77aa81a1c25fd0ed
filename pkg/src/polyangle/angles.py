"""Pointwise triangle angles over the canonical base edge.

The apex at (x, y) forms a triangle with the base vertices (0, 0) and (d, 0);
the three angles come from the law of cosines with the cosine argument clamped
into [-1, 1] so that rounding near collinear configurations can never produce
a NaN.  Angle naming convention: alpha sits at (d, 0), beta at (0, 0), gamma
at the apex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateApex
from .geometry import BaseEdge, Point

__all__ = [
    "SideLengths",
    "AngleTriple",
    "side_lengths",
    "angles_at",
    "beta_polar_check",
    "angles_xy",
]

DEG_PER_RAD = 180.0 / math.pi

# Apexes closer than this (relative to d) to a base vertex have no defined angle there.
VERTEX_RTOL = 1e-14


@dataclass(frozen=True)
class SideLengths:
    """Triangle side lengths: a to (0,0), b to (d,0), c = d."""

    a: float
    b: float
    c: float


@dataclass(frozen=True)
class AngleTriple:
    """Triangle angles in degrees: alpha at (d,0), beta at (0,0), gamma at the apex."""

    alpha: float
    beta: float
    gamma: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def side_lengths(p: Point, base: BaseEdge) -> SideLengths:
    """Distances from the apex to the two base vertices, plus the base length."""
    d = base.length
    a = math.sqrt(p.x * p.x + p.y * p.y)
    b = math.sqrt((p.x - d) * (p.x - d) + p.y * p.y)
    return SideLengths(a, b, d)


def _clamp(t: float) -> float:
    return -1.0 if t < -1.0 else (1.0 if t > 1.0 else t)


def angles_at(p: Point, base: BaseEdge) -> AngleTriple:
    """Triangle angles in degrees at apex p.

    Apexes on the open base segment yield the continuous limit (0, 0, 180),
    collinear apexes beyond the segment the appropriate 0/180 limits.  An apex
    within VERTEX_RTOL * d of a base vertex raises DegenerateApex, since the
    angle at that vertex is genuinely undefined.
    """
    d = base.length
    s = side_lengths(p, base)
    a, b = s.a, s.b
    if a < VERTEX_RTOL * d or b < VERTEX_RTOL * d:
        raise DegenerateApex(f"apex {p} coincides with a base vertex")
    a2, b2, c2 = a * a, b * b, d * d
    alpha = math.acos(_clamp((b2 + c2 - a2) / (2.0 * b * d))) * DEG_PER_RAD
    beta = math.acos(_clamp((a2 + c2 - b2) / (2.0 * a * d))) * DEG_PER_RAD
    gamma = math.acos(_clamp((a2 + b2 - c2) / (2.0 * a * b))) * DEG_PER_RAD
    return AngleTriple(alpha, beta, gamma)


def beta_polar_check(p: Point, base: BaseEdge) -> float:
    """Independent check of beta: the polar angle of the apex about (0, 0), in degrees."""
    if math.sqrt(p.x * p.x + p.y * p.y) < VERTEX_RTOL * base.length:
        raise DegenerateApex(f"apex {p} coincides with the origin")
    return math.degrees(math.atan2(p.y, p.x))


def angles_xy(x: np.ndarray, y: np.ndarray, d: float):
    """Vectorized angle evaluation; returns (alpha, beta, gamma) arrays in degrees.

    Same law-of-cosines arithmetic as angles_at; callers must keep apexes away
    from the base vertices.
    """
    a2 = x * x + y * y
    b2 = (x - d) * (x - d) + y * y
    a = np.sqrt(a2)
    b = np.sqrt(b2)
    c2 = d * d
    alpha = np.arccos(np.clip((b2 + c2 - a2) / (2.0 * b * d), -1.0, 1.0)) * DEG_PER_RAD
    beta = np.arccos(np.clip((a2 + c2 - b2) / (2.0 * a * d), -1.0, 1.0)) * DEG_PER_RAD
    gamma = np.arccos(np.clip((a2 + b2 - c2) / (2.0 * a * b), -1.0, 1.0)) * DEG_PER_RAD
    return alpha, beta, gamma
