"""Closed-form predictions and the reflection-symmetry predicate."""

import math
from fractions import Fraction

import pytest

from polyangle import (
    CircleLimit,
    ConvexPolygon,
    InvalidN,
    Point,
    PredictionOnlyShape,
    RegularNGon,
    half_interior_angle,
    predict,
    symmetry_check,
)


def test_predict_examples():
    assert predict(4).mean.as_tuple() == (45.0, 45.0, 90.0)
    assert predict(5).mean.as_tuple() == (54.0, 54.0, 72.0)
    assert predict(math.inf).mean.as_tuple() == (90.0, 90.0, 0.0)
    assert predict(3).mean.as_tuple() == (30.0, 30.0, 120.0)


def test_predict_labels_and_base_angle_equality():
    p = predict(7)
    assert p.exactness == "conjectured_exact"
    assert p.mean.alpha == p.mean.beta
    assert p.n == 7


def test_predict_invalid_n():
    for bad in (2, 1, 0, -3, 2.5, True):
        with pytest.raises(InvalidN):
            predict(bad)
    with pytest.raises(InvalidN):
        half_interior_angle(2)


def test_gamma_times_n_is_360_exactly():
    for n in range(3, 65):
        exact = predict(n).exact_degrees
        assert exact[2] * n == 360
        assert exact[0] + exact[1] + exact[2] == 180
        assert exact[0] == Fraction(90 * (n - 2), n)


def test_float_means_sum_to_exactly_180():
    for n in range(3, 65):
        m = predict(n).mean
        assert m.alpha + m.beta + m.gamma == 180.0


def test_predict_monotone_with_limits():
    alphas = [predict(n).mean.alpha for n in range(3, 65)]
    gammas = [predict(n).mean.gamma for n in range(3, 65)]
    assert all(b > a for a, b in zip(alphas, alphas[1:]))
    assert all(b < a for a, b in zip(gammas, gammas[1:]))
    assert alphas[-1] < 90.0 and gammas[-1] > 0.0
    assert predict(math.inf).mean.alpha == 90.0
    assert predict(math.inf).mean.gamma == 0.0


def test_half_interior_angle_examples():
    assert half_interior_angle(4) == 45.0
    assert half_interior_angle(3) == 30.0
    assert half_interior_angle(6) == 60.0
    for n in range(3, 65):
        assert half_interior_angle(n) == predict(n).mean.alpha


def test_symmetry_check_examples():
    assert symmetry_check(RegularNGon(4, 1.0))
    for n in range(3, 13):
        assert symmetry_check(RegularNGon(n, 1.0))
    asymmetric = ConvexPolygon((Point(0, 0), Point(1, 0), Point(1, 2), Point(0, 1)), 0)
    assert not symmetry_check(asymmetric)
    rectangle = ConvexPolygon((Point(0, 0), Point(2, 0), Point(2, 1), Point(0, 1)), 0)
    assert symmetry_check(rectangle)


def test_symmetry_check_rejects_circle():
    with pytest.raises(PredictionOnlyShape):
        symmetry_check(CircleLimit())
