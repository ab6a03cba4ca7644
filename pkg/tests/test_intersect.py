import math

import numpy as np
import pytest

from curvekit.intersect import (
    IdenticalCurvesError,
    count_nonzero_intersections,
    intersections,
    origin_on_curve,
)
from curvekit.polar import PolarCurve
from oracles import rasterized_intersections

SQ3_4 = math.sqrt(3.0) / 4.0


def curve(text, params=None):
    return PolarCurve(text, params)


def point_set(result):
    return sorted((round(p.point.real, 8), round(p.point.imag, 8)) for p in result.points)


class TestOriginOnCurve:
    def test_never_zero(self):
        assert origin_on_curve(curve("1")) is None

    def test_cosine(self):
        assert origin_on_curve(curve("cos(theta)")) == pytest.approx(math.pi / 2, abs=1e-9)

    def test_limacon(self):
        lam = 2.0
        theta = origin_on_curve(curve("1 - lambda*sin(theta)", {"lambda": lam}))
        assert theta == pytest.approx(math.asin(1.0 / lam), abs=1e-9)


class TestGoldenPairs:
    def test_unit_circle_and_cosine(self):
        result = intersections(curve("1"), curve("cos(theta)"))
        assert not result.origin
        assert len(result.points) == 1
        assert abs(result.points[0].point - 1.0) < 1e-8

    def test_cardioid_pair(self):
        result = intersections(curve("cos(theta)"), curve("1 - cos(theta)"))
        assert result.origin
        assert len(result.points) == 2
        expected = sorted([(0.25, SQ3_4), (0.25, -SQ3_4)])
        got = point_set(result)
        for (gx, gy), (ex, ey) in zip(got, expected):
            assert abs(gx - ex) < 1e-8 and abs(gy - ey) < 1e-8
        # three common points in total, counting the origin
        assert len(result.all_points()) == 3

    def test_circle_and_cardioid_tangency(self):
        # Solving 1 + cos = 2cos gives cos(theta) = 1, i.e. theta = 0 where
        # both radii equal 2: the nonzero common point is z = 2 (the brute
        # force oracle below agrees).
        result = intersections(curve("2*cos(theta)"), curve("1 + cos(theta)"))
        assert result.origin
        assert len(result.points) == 1
        assert abs(result.points[0].point - 2.0) < 1e-8
        count, reps, origin_hit = rasterized_intersections(
            curve("2*cos(theta)"), curve("1 + cos(theta)")
        )
        assert count == 2 and origin_hit
        nonzero = reps[np.abs(reps) > 1e-2]
        assert len(nonzero) == 1
        assert abs(nonzero[0] - 2.0) < 5e-2  # tangency arc centroid


class TestRoseCounts:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 8), (3, 3), (4, 16), (5, 5)])
    def test_same_order_roses(self, n, expected):
        c1 = curve(f"sin({n}*theta)")
        c2 = curve(f"cos({n}*theta)")
        assert count_nonzero_intersections(c1, c2) == expected

    @pytest.mark.parametrize("m,n", [(3, 1), (5, 3), (7, 5)])
    def test_mixed_odd_roses(self, m, n):
        c1 = curve(f"cos({m}*theta)")
        c2 = curve(f"sin({n}*theta)")
        assert count_nonzero_intersections(c1, c2) == max(m, n)

    def test_against_rasterization_oracle(self):
        for spec in [("sin(3*theta)", "cos(3*theta)"), ("cos(5*theta)", "sin(3*theta)")]:
            c1, c2 = curve(spec[0]), curve(spec[1])
            result = intersections(c1, c2)
            clusters, _, origin_hit = rasterized_intersections(c1, c2)
            assert clusters == len(result.points) + (1 if result.origin else 0)
            assert origin_hit == result.origin


class TestInvariants:
    @pytest.mark.parametrize(
        "t1,t2",
        [
            ("cos(theta)", "1 - cos(theta)"),
            ("sin(3*theta)", "cos(3*theta)"),
            ("1", "cos(theta)"),
        ],
    )
    def test_argument_symmetry(self, t1, t2):
        forward = intersections(curve(t1), curve(t2))
        backward = intersections(curve(t2), curve(t1))
        assert point_set(forward) == point_set(backward)
        assert forward.origin == backward.origin

    def test_witnesses_map_to_the_point(self):
        result = intersections(curve("sin(3*theta)"), curve("cos(3*theta)"))
        f = curve("sin(3*theta)")
        g = curve("cos(3*theta)")
        for p in result.points:
            z1 = f.eval(p.theta1) * np.exp(1j * p.theta1)
            z2 = g.eval(p.theta2) * np.exp(1j * p.theta2)
            assert abs(z1 - p.point) < 1e-8
            assert abs(z2 - p.point) < 1e-8

    def test_points_are_distinct(self):
        result = intersections(curve("sin(4*theta)"), curve("cos(4*theta)"))
        pts = [p.point for p in result.points]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                assert abs(pts[i] - pts[j]) > 1e-8

    def test_canonical_ordering_is_reproducible(self):
        first = intersections(curve("sin(3*theta)"), curve("cos(3*theta)"))
        second = intersections(curve("sin(3*theta)"), curve("cos(3*theta)"))
        assert [p.point for p in first.points] == [p.point for p in second.points]
        assert [p.theta1 for p in first.points] == [p.theta1 for p in second.points]


class TestDegenerate:
    def test_same_expression(self):
        with pytest.raises(IdenticalCurvesError):
            intersections(curve("cos(theta)"), curve("cos(theta)"))

    def test_negated_constant_is_the_same_circle(self):
        with pytest.raises(IdenticalCurvesError):
            intersections(curve("1"), curve("-1"))

    def test_disguised_identity(self):
        with pytest.raises(IdenticalCurvesError):
            intersections(curve("cos(theta)"), curve("sin(theta + pi/2)"))

    def test_count_raises_too(self):
        with pytest.raises(IdenticalCurvesError):
            count_nonzero_intersections(curve("cos(theta)"), curve("cos(theta)"))

    def test_mirror_circles_meet_only_at_origin(self):
        # r = -cos(theta) is the mirror circle through the origin, not the
        # same graph: x = cos^2 >= 0 on one, <= 0 on the other
        result = intersections(curve("cos(theta)"), curve("-cos(theta)"))
        assert result.origin
        assert len(result.points) == 0

    def test_aperiodic_curve_rejected(self):
        with pytest.raises(ValueError):
            intersections(curve("theta/10"), curve("1"))
