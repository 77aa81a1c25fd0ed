"""Closed-form mean-angle prediction for regular n-gons and the circle limit.

For a regular n-gon the mean base angles equal half the interior angle,
(n-2)/(2n) * 180 degrees, and the mean apex angle is the remainder 360/n.
The artifact verifies this numerically; it is not proven here, so predictions
carry the exactness label "conjectured_exact".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .angles import AngleTriple
from .errors import InvalidN
from .geometry import Polygon, RegionSpec, build_region

__all__ = ["Prediction", "predict", "symmetry_check", "half_interior_angle"]

SYMMETRY_RTOL = 1e-9


@dataclass(frozen=True)
class Prediction:
    """Predicted mean angles for a regular n-gon (n = inf is the circle)."""

    mean: AngleTriple
    n: int | float
    exactness: str
    exact_degrees: tuple[Fraction, Fraction, Fraction]


def _check_n(n) -> None:
    if n == math.inf:
        return
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise InvalidN(f"need integer n >= 3 or n = inf, got {n!r}")


def predict(n: int | float) -> Prediction:
    """Predicted mean angles: alpha = beta = (n-2)/(2n)*180, gamma the remainder."""
    _check_n(n)
    if n == math.inf:
        exact = (Fraction(90), Fraction(90), Fraction(0))
        return Prediction(AngleTriple(90.0, 90.0, 0.0), math.inf, "conjectured_exact", exact)
    base = Fraction(90 * (n - 2), n)
    exact = (base, base, Fraction(360, n))
    alpha = float(base)
    # gamma by float subtraction keeps the three floats summing to exactly 180
    gamma = 180.0 - alpha - alpha
    return Prediction(AngleTriple(alpha, alpha, gamma), n, "conjectured_exact", exact)


def half_interior_angle(n: int) -> float:
    """Half the interior angle of the regular n-gon, (n-2)*90/n degrees."""
    _check_n(n)
    if n == math.inf:
        return 90.0
    return float(Fraction(90 * (n - 2), n))


def symmetry_check(region: RegionSpec | Polygon) -> bool:
    """True iff the canonical polygon is invariant under the reflection x -> d - x.

    When true, the mirror identity of the pointwise angles forces the exact
    equality of the two mean base angles for the area-uniform apex.
    """
    polygon = region if isinstance(region, Polygon) else build_region(region)
    d = polygon.base.length
    tol = SYMMETRY_RTOL * d
    reflected = [(d - p.x, p.y) for p in polygon.vertices]
    unmatched = list(polygon.vertices)
    for rx, ry in reflected:
        for i, q in enumerate(unmatched):
            if math.hypot(rx - q.x, ry - q.y) <= tol:
                del unmatched[i]
                break
        else:
            return False
    return True
