"""Root finding on a bracketing grid and adaptive Simpson quadrature.

These are the shared scalar-equation and integral engines for the polar,
intersection, area and roulette computations.  ``find_roots`` expects its
function to accept numpy arrays (every curve evaluator in this package does);
``integrate`` works with plain scalar callables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Grid density and tolerances chosen to separate roots spaced pi/(2N) for
# N up to 12 and to reject sign changes caused by poles (e.g. tan).
DEFAULT_GRID_PER_TWO_PI = 2048
DEFAULT_TOL = 1e-10
RESIDUAL_GATE = 1e-6
TANGENTIAL_GATE = 1e-8
TANGENTIAL_PREFILTER = 1e-3
POLE_MAGNITUDE = 1e12
DEDUPE_FACTOR = 10.0


@dataclass(frozen=True)
class RootList:
    """Sorted roots of a scalar function on an interval, with residuals."""

    roots: tuple[float, ...]
    residuals: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i: int) -> float:
        return self.roots[i]


def _eval_grid(f, xs):
    ys = f(xs)
    ys = np.asarray(ys, dtype=float)
    if ys.shape != xs.shape:
        raise ValueError("root-finding function must map arrays to arrays")
    return ys


def _bisect_many(f, lo, hi, tol, max_iter=200):
    """Vectorized bisection on brackets lo/hi with f(lo), f(hi) of opposite sign."""
    lo = lo.copy()
    hi = hi.copy()
    flo = _eval_grid(f, lo)
    for _ in range(max_iter):
        if np.all(hi - lo < tol):
            break
        mid = 0.5 * (lo + hi)
        fmid = _eval_grid(f, mid)
        left = (flo <= 0) == (fmid <= 0)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _refine_abs_min(f, lo, hi, tol, max_iter=200):
    """Golden-section search for the minimum of |f| on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = abs(float(_eval_grid(f, np.array([c]))[0]))
    fd = abs(float(_eval_grid(f, np.array([d]))[0]))
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = abs(float(_eval_grid(f, np.array([c]))[0]))
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = abs(float(_eval_grid(f, np.array([d]))[0]))
    return 0.5 * (a + b)


def find_roots(
    f,
    a: float,
    b: float,
    grid_n: int | None = None,
    tol: float = DEFAULT_TOL,
    right_open: bool = False,
) -> RootList:
    """All roots of f on [a, b] (or [a, b) when right_open).

    Sign changes on the sampling grid are refined by bisection; zeros the
    function only touches (no sign change) are recovered from local minima
    of |f| and kept when the refined |f| drops below the tangential gate.
    Grid nodes where |f| explodes or is non-finite are treated as interval
    breaks (poles), never as crossings, and pole-side "roots" are rejected
    by the residual gate.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError("need a < b")
    if grid_n is None:
        grid_n = max(32, int(math.ceil(DEFAULT_GRID_PER_TWO_PI * (b - a) / TWO_PI)))
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")

    xs = np.linspace(a, b, grid_n + 1)
    ys = _eval_grid(f, xs)
    if not (np.isfinite(ys[0]) and np.isfinite(ys[-1])):
        raise ValueError("non-finite endpoint values")
    ok = np.isfinite(ys) & (np.abs(ys) < POLE_MAGNITUDE)

    candidates: list[float] = []

    exact = ok & (ys == 0.0)
    candidates.extend(xs[exact].tolist())

    sign_change = ok[:-1] & ok[1:] & (np.sign(ys[:-1]) * np.sign(ys[1:]) < 0)
    idx = np.nonzero(sign_change)[0]
    if idx.size:
        roots = _bisect_many(f, xs[idx], xs[idx + 1], tol)
        res = np.abs(_eval_grid(f, roots))
        candidates.extend(roots[res < RESIDUAL_GATE].tolist())

    ay = np.abs(ys)
    for i in range(len(xs)):
        if not ok[i] or ay[i] == 0.0 or ay[i] >= TANGENTIAL_PREFILTER:
            continue
        left_larger = i == 0 or (ok[i - 1] and ay[i - 1] >= ay[i])
        right_larger = i == len(xs) - 1 or (ok[i + 1] and ay[i + 1] >= ay[i])
        if not (left_larger and right_larger):
            continue
        if i > 0 and ok[i - 1] and np.sign(ys[i - 1]) * np.sign(ys[i]) < 0:
            continue  # belongs to a sign change, already handled
        if i < len(xs) - 1 and ok[i + 1] and np.sign(ys[i]) * np.sign(ys[i + 1]) < 0:
            continue
        lo = xs[max(i - 1, 0)]
        hi = xs[min(i + 1, len(xs) - 1)]
        m = _refine_abs_min(f, lo, hi, tol)
        if abs(float(_eval_grid(f, np.array([m]))[0])) < TANGENTIAL_GATE:
            candidates.append(float(m))

    candidates.sort()
    gap = DEDUPE_FACTOR * tol
    roots: list[float] = []
    residuals: list[float] = []
    for root in candidates:
        value = abs(float(_eval_grid(f, np.array([root]))[0]))
        if right_open and abs(root - b) <= gap:
            continue
        if roots and root - roots[-1] < gap:
            if value < residuals[-1]:
                roots[-1] = root
                residuals[-1] = value
            continue
        roots.append(root)
        residuals.append(value)
    return RootList(tuple(roots), tuple(residuals))


_DEPTH_CAP = 40
_FORCED_SPLITS = 2  # guards against all initial nodes landing on zeros


def _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    if not (math.isfinite(flm) and math.isfinite(frm)):
        raise ValueError("non-finite sample encountered")
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    converged = abs(delta) <= 15.0 * tol and depth <= _DEPTH_CAP - _FORCED_SPLITS
    if depth <= 0 or converged:
        return left + right + delta / 15.0
    return _adaptive_simpson(
        f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1
    ) + _adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)


def integrate(f, a: float, b: float, tol: float = DEFAULT_TOL) -> float:
    """Adaptive-Simpson integral of f over [a, b], |error| of order tol.

    The orientation is signed: integrate(f, b, a) == -integrate(f, a, b).
    Recursion depth is capped at 40, far below the point where subintervals
    reach rounding size for any finite interval.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    if b < a:
        return -integrate(f, b, a, tol)
    fa = f(a)
    fb = f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    if not all(math.isfinite(v) for v in (fa, fb, fm)):
        raise ValueError("non-finite sample encountered")
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, _DEPTH_CAP)
