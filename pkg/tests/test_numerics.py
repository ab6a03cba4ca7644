import math

import numpy as np
import pytest

from curvekit.numerics import RootList, find_roots, integrate

TWO_PI = 2.0 * math.pi


class TestFindRoots:
    def test_tangential_zero(self):
        roots = find_roots(lambda th: np.cos(th) - 1.0, 0.0, TWO_PI, right_open=True)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.0, abs=1e-9)

    def test_simple_crossing(self):
        roots = find_roots(lambda th: np.sin(th) - np.cos(th), 0.0, math.pi / 2)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(math.pi / 4, abs=1e-9)

    def test_tan_family_with_poles(self):
        roots = find_roots(lambda th: np.tan(3.0 * th) - 1.0, 0.0, math.pi)
        expected = [math.pi / 12 + k * math.pi / 3 for k in range(3)]
        assert len(roots) == 3
        assert list(roots) == pytest.approx(expected, abs=1e-9)

    def test_residuals_small_and_sorted(self):
        roots = find_roots(lambda th: np.sin(2.0 * th), 0.1, TWO_PI - 0.1)
        assert all(res < 1e-6 for res in roots.residuals)
        assert list(roots) == sorted(roots)

    def test_grid_doubling_is_stable(self):
        f = lambda th: np.tan(5.0 * th) - 1.0
        first = find_roots(f, 0.0, math.pi, grid_n=2048)
        second = find_roots(f, 0.0, math.pi, grid_n=4096)
        assert len(first) == len(second)
        assert np.allclose(list(first), list(second), atol=1e-9)

    def test_dense_roses_are_separated(self):
        f = lambda th: np.sin(12.0 * th) - np.cos(12.0 * th)
        roots = find_roots(f, 0.0, TWO_PI, right_open=True)
        assert len(roots) == 24

    def test_right_open_drops_endpoint(self):
        closed = find_roots(lambda th: np.sin(th), 0.0, TWO_PI)
        half = find_roots(lambda th: np.sin(th), 0.0, TWO_PI, right_open=True)
        assert len(closed) == len(half) + 1

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            find_roots(lambda th: th, 0.0, 1.0, grid_n=1)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            find_roots(lambda th: th, 1.0, 1.0)

    def test_non_finite_endpoint(self):
        with np.errstate(divide="ignore"):
            with pytest.raises(ValueError, match="endpoint"):
                find_roots(lambda th: 1.0 / th, 0.0, 1.0)

    def test_returns_rootlist(self):
        roots = find_roots(lambda th: np.cos(th), 0.0, math.pi)
        assert isinstance(roots, RootList)
        assert len(roots) == len(roots.residuals) == 1


class TestIntegrate:
    def test_sine_hump(self):
        assert integrate(math.sin, 0.0, math.pi, 1e-10) == pytest.approx(2.0, abs=1e-9)

    def test_sin_squared_closed_form(self):
        # antiderivative of sin^2 is theta/2 - sin(2*theta)/4
        expected = math.pi / 8 - 0.25
        value = integrate(lambda t: math.sin(t) ** 2, 0.0, math.pi / 4, 1e-10)
        assert value == pytest.approx(expected, abs=1e-10)

    def test_circle_circumference(self):
        speed = lambda t: abs(3j * np.exp(1j * t))  # |d/dt (3 e^{it})|
        value = integrate(speed, 0.0, TWO_PI, 1e-10)
        assert value == pytest.approx(6.0 * math.pi, abs=1e-10)

    def test_additivity(self):
        f = lambda t: math.exp(math.sin(3.0 * t))
        tol = 1e-10
        whole = integrate(f, 0.0, 2.0, tol)
        split = integrate(f, 0.0, 0.731, tol) + integrate(f, 0.731, 2.0, tol)
        assert abs(split - whole) < 3.0 * tol

    @pytest.mark.parametrize("center", [0.0, 1.3])
    def test_odd_function_cancels(self, center):
        f = lambda t: (t - center) ** 3 * math.cos(t - center) + math.sin(t - center)
        tol = 1e-10
        assert abs(integrate(f, center - 2.0, center + 2.0, tol)) < tol * 10

    def test_signed_orientation(self):
        forward = integrate(math.sin, 0.0, math.pi, 1e-10)
        assert integrate(math.sin, math.pi, 0.0, 1e-10) == -forward

    def test_empty_interval(self):
        assert integrate(math.sin, 1.0, 1.0) == 0.0

    def test_non_finite_sample(self):
        with np.errstate(divide="ignore"):
            with pytest.raises(ValueError, match="non-finite"):
                integrate(lambda t: float(np.divide(1.0, t)), -1.0, 1.0, 1e-10)
