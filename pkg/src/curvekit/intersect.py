"""Intersection points of two polar curves.

Nonzero common points of r = f(theta) and r = g(theta) satisfy one of the two
scalar equation families

    f(theta) = g(theta + 2*n*pi)          (same ray)
    f(theta) = -g(theta + pi + 2*n*pi)    (opposite ray)

with theta swept over a window long enough to trace both graphs and n over
the distinct 2*pi-offsets of the second curve's period.  The origin carries
no angle and is tested separately: it is common exactly when each radius
function vanishes somewhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import symmetric_hausdorff
from .numerics import find_roots
from .polar import PolarCurve

ZERO_RADIUS_TOL = 1e-9
DEDUPE_TOL = 1e-8
IDENTICAL_GRAPH_TOL = 1e-6
_GRAPH_SAMPLES = 1024


class IdenticalCurvesError(ValueError):
    """Both expressions trace the same graph; every point is common."""


@dataclass(frozen=True)
class IntersectionPoint:
    point: complex
    theta1: float  # witness angle on the first curve
    theta2: float  # witness angle on the second curve
    residual: float


@dataclass(frozen=True)
class IntersectionResult:
    origin: bool
    origin_witnesses: tuple[float, float] | None
    points: tuple[IntersectionPoint, ...]

    def count_nonzero(self) -> int:
        return len(self.points)

    def all_points(self) -> list[complex]:
        pts = [p.point for p in self.points]
        if self.origin:
            pts.append(0j)
        return pts


def graph_points(curve: PolarCurve, samples: int = _GRAPH_SAMPLES) -> np.ndarray:
    """Dense sample of the full polar graph (over one period window)."""
    a, b = curve.period_window()
    thetas = np.linspace(a, b, samples, endpoint=False)
    return curve.points_many(thetas)


def origin_on_curve(curve: PolarCurve, window: tuple[float, float] | None = None) -> float | None:
    """Smallest angle in the window where the radius vanishes, if any."""
    if window is None:
        n = curve.period_multiple_of_pi()
        window = (0.0, n * math.pi) if n is not None else curve.domain
    roots = find_roots(curve.eval_many, window[0], window[1])
    for theta in roots:
        if abs(curve.eval(theta)) < ZERO_RADIUS_TOL:
            return float(theta)
    return None


def intersections(c1: PolarCurve, c2: PolarCurve) -> IntersectionResult:
    """All intersection points of two distinct polar curves.

    Raises IdenticalCurvesError when the sampled graphs coincide, and
    ValueError when either curve has no finite polar period.
    """
    n1 = c1.period_multiple_of_pi()
    n2 = c2.period_multiple_of_pi()
    if n1 is None or n2 is None:
        raise ValueError("both curves need a finite polar period")

    g1 = graph_points(c1)
    g2 = graph_points(c2)
    if symmetric_hausdorff(g1, g2) < IDENTICAL_GRAPH_TOL:
        raise IdenticalCurvesError(
            f"curves {c1.text!r} and {c2.text!r} trace the same graph"
        )

    window = math.pi * math.lcm(n1, n2, 2)
    offsets = range(0, (n2 + 1) // 2)

    candidates: list[IntersectionPoint] = []
    for n in offsets:
        for opposite in (False, True):
            shift = (2 * n + 1) * math.pi if opposite else 2 * n * math.pi
            sign = -1.0 if opposite else 1.0

            def equation(th, _shift=shift, _sign=sign):
                return c1.eval_many(th) - _sign * c2.eval_many(th + _shift)

            for theta in find_roots(equation, 0.0, window, right_open=True):
                r1 = c1.eval(theta)
                if abs(r1) < ZERO_RADIUS_TOL:
                    continue
                theta2 = theta + shift
                point = r1 * cmath.exp(1j * theta)
                residual = abs(c2.eval(theta2) * cmath.exp(1j * theta2) - point)
                candidates.append(IntersectionPoint(point, float(theta), float(theta2), residual))

    candidates.sort(key=lambda p: (round(cmath.phase(p.point) % (2 * math.pi), 9), abs(p.point)))
    unique: list[IntersectionPoint] = []
    for cand in candidates:
        clash = False
        for kept in unique:
            if abs(cand.point - kept.point) < DEDUPE_TOL:
                clash = True
                break
        if not clash:
            unique.append(cand)

    theta_f = origin_on_curve(c1)
    theta_g = origin_on_curve(c2)
    has_origin = theta_f is not None and theta_g is not None
    return IntersectionResult(
        origin=has_origin,
        origin_witnesses=(theta_f, theta_g) if has_origin else None,
        points=tuple(unique),
    )


def count_nonzero_intersections(c1: PolarCurve, c2: PolarCurve) -> int:
    """Number of common points other than the origin."""
    return intersections(c1, c2).count_nonzero()
