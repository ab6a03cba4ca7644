"""Array kernels, JIT-compiled with numba when available.

Set the environment variable ``CURVEKIT_DISABLE_NUMBA=1`` to force the pure
numpy fallbacks (same results, slower on large inputs).  The script
``benchmarks/bench_kernels.py`` times the two paths side by side.
"""

from __future__ import annotations

import os

import numpy as np

# Opcodes of the expression bytecode produced by expr.compile_program.
OP_CONST = 0
OP_VAR = 1
OP_NEG = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_POW = 7   # arg indexes the (real) exponent in the constant table
OP_POWI = 8  # arg is the integer exponent itself
OP_SIN = 9
OP_COS = 10
OP_TAN = 11
OP_SQRT = 12
OP_ABS = 13


def _disabled_by_env() -> bool:
    flag = os.environ.get("CURVEKIT_DISABLE_NUMBA", "").strip().lower()
    return flag in ("1", "true", "yes", "on")


NUMBA_ENABLED = False
if not _disabled_by_env():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _njit = None


def _run_program_elementwise(code, consts, stack_size, xs):
    # Stack machine evaluated point by point; meant to run under numba.
    n = xs.shape[0]
    m = code.shape[0]
    out = np.empty(n)
    stack = np.empty(stack_size)
    for i in range(n):
        x = xs[i]
        sp = 0
        for j in range(m):
            op = code[j, 0]
            arg = code[j, 1]
            if op == OP_CONST:
                stack[sp] = consts[arg]
                sp += 1
            elif op == OP_VAR:
                stack[sp] = x
                sp += 1
            elif op == OP_NEG:
                stack[sp - 1] = -stack[sp - 1]
            elif op == OP_ADD:
                stack[sp - 2] = stack[sp - 2] + stack[sp - 1]
                sp -= 1
            elif op == OP_SUB:
                stack[sp - 2] = stack[sp - 2] - stack[sp - 1]
                sp -= 1
            elif op == OP_MUL:
                stack[sp - 2] = stack[sp - 2] * stack[sp - 1]
                sp -= 1
            elif op == OP_DIV:
                stack[sp - 2] = stack[sp - 2] / stack[sp - 1]
                sp -= 1
            elif op == OP_POW:
                stack[sp - 1] = stack[sp - 1] ** consts[arg]
            elif op == OP_POWI:
                base = stack[sp - 1]
                k = arg if arg >= 0 else -arg
                acc = 1.0
                for _ in range(k):
                    acc = acc * base
                if arg < 0:
                    acc = 1.0 / acc
                stack[sp - 1] = acc
            elif op == OP_SIN:
                stack[sp - 1] = np.sin(stack[sp - 1])
            elif op == OP_COS:
                stack[sp - 1] = np.cos(stack[sp - 1])
            elif op == OP_TAN:
                stack[sp - 1] = np.tan(stack[sp - 1])
            elif op == OP_SQRT:
                stack[sp - 1] = np.sqrt(stack[sp - 1])
            else:
                stack[sp - 1] = np.abs(stack[sp - 1])
        out[i] = stack[0]
    return out


def run_program_vectorized(code, consts, stack_size, xs):
    """Pure numpy path: the same stack machine on whole arrays."""
    stack: list[np.ndarray] = []
    with np.errstate(all="ignore"):
        for j in range(code.shape[0]):
            op = int(code[j, 0])
            arg = int(code[j, 1])
            if op == OP_CONST:
                stack.append(np.full(xs.shape, consts[arg]))
            elif op == OP_VAR:
                stack.append(xs.astype(float, copy=True))
            elif op == OP_NEG:
                stack[-1] = -stack[-1]
            elif op == OP_ADD:
                b = stack.pop()
                stack[-1] = stack[-1] + b
            elif op == OP_SUB:
                b = stack.pop()
                stack[-1] = stack[-1] - b
            elif op == OP_MUL:
                b = stack.pop()
                stack[-1] = stack[-1] * b
            elif op == OP_DIV:
                b = stack.pop()
                stack[-1] = stack[-1] / b
            elif op == OP_POW:
                stack[-1] = stack[-1] ** consts[arg]
            elif op == OP_POWI:
                base = stack[-1]
                acc = np.ones_like(base)
                for _ in range(abs(arg)):
                    acc = acc * base
                if arg < 0:
                    acc = 1.0 / acc
                stack[-1] = acc
            elif op == OP_SIN:
                stack[-1] = np.sin(stack[-1])
            elif op == OP_COS:
                stack[-1] = np.cos(stack[-1])
            elif op == OP_TAN:
                stack[-1] = np.tan(stack[-1])
            elif op == OP_SQRT:
                stack[-1] = np.sqrt(stack[-1])
            else:
                stack[-1] = np.abs(stack[-1])
    return stack[0]


def _close_pairs_count(ax, ay, bx, by, tol):
    # Both point sets sorted by x; sweep with a sliding window on b.
    na = ax.shape[0]
    nb = bx.shape[0]
    tol2 = tol * tol
    count = 0
    lo = 0
    for i in range(na):
        x = ax[i]
        while lo < nb and bx[lo] < x - tol:
            lo += 1
        j = lo
        while j < nb and bx[j] <= x + tol:
            dx = x - bx[j]
            dy = ay[i] - by[j]
            if dx * dx + dy * dy < tol2:
                count += 1
            j += 1
    return count


def _close_pairs_fill(ax, ay, bx, by, tol, outx, outy):
    nb = bx.shape[0]
    tol2 = tol * tol
    k = 0
    lo = 0
    for i in range(ax.shape[0]):
        x = ax[i]
        while lo < nb and bx[lo] < x - tol:
            lo += 1
        j = lo
        while j < nb and bx[j] <= x + tol:
            dx = x - bx[j]
            dy = ay[i] - by[j]
            if dx * dx + dy * dy < tol2:
                outx[k] = 0.5 * (x + bx[j])
                outy[k] = 0.5 * (ay[i] + by[j])
                k += 1
            j += 1
    return k


def _cluster_labels(xs, ys, tol):
    # Single-linkage union-find on points sorted by x; window limited to
    # |dx| <= tol, so chains across a tangency arc stay one cluster.
    n = xs.shape[0]
    parent = np.arange(n)
    tol2 = tol * tol
    for i in range(n):
        j = i + 1
        while j < n and xs[j] - xs[i] <= tol:
            dx = xs[j] - xs[i]
            dy = ys[j] - ys[i]
            if dx * dx + dy * dy < tol2:
                ri = i
                while parent[ri] != ri:
                    ri = parent[ri]
                rj = j
                while parent[rj] != rj:
                    rj = parent[rj]
                if ri != rj:
                    if ri < rj:
                        parent[rj] = ri
                    else:
                        parent[ri] = rj
            j += 1
    for i in range(n):
        r = i
        while parent[r] != r:
            r = parent[r]
        parent[i] = r
    return parent


if NUMBA_ENABLED:
    # error_model="numpy" keeps IEEE semantics (x/0 -> inf/nan, no raise),
    # matching the vectorized fallback
    _run_program_jit = _njit(cache=True, error_model="numpy")(_run_program_elementwise)
    _close_pairs_count_jit = _njit(cache=True)(_close_pairs_count)
    _close_pairs_fill_jit = _njit(cache=True)(_close_pairs_fill)
    _cluster_labels_jit = _njit(cache=True)(_cluster_labels)


def run_program(code, consts, stack_size, xs, force_numpy=False):
    """Evaluate compiled expression bytecode over an array of inputs.

    Follows IEEE semantics (poles give inf/nan); callers that need strict
    error reporting use the scalar evaluator in the expr module.
    """
    xs = np.ascontiguousarray(xs, dtype=float)
    if NUMBA_ENABLED and not force_numpy:
        return _run_program_jit(code, consts, stack_size, xs)
    return run_program_vectorized(code, consts, stack_size, xs)


def close_pair_points(za, zb, tol, force_numpy=False):
    """Midpoints of all pairs (a, b), a from za, b from zb, with |a-b| < tol."""
    za = np.asarray(za, dtype=complex)
    zb = np.asarray(zb, dtype=complex)
    ia = np.argsort(za.real, kind="stable")
    ib = np.argsort(zb.real, kind="stable")
    ax = np.ascontiguousarray(za.real[ia])
    ay = np.ascontiguousarray(za.imag[ia])
    bx = np.ascontiguousarray(zb.real[ib])
    by = np.ascontiguousarray(zb.imag[ib])
    if NUMBA_ENABLED and not force_numpy:
        n = _close_pairs_count_jit(ax, ay, bx, by, tol)
        outx = np.empty(n)
        outy = np.empty(n)
        _close_pairs_fill_jit(ax, ay, bx, by, tol, outx, outy)
    else:
        n = _close_pairs_count(ax, ay, bx, by, tol)
        outx = np.empty(n)
        outy = np.empty(n)
        _close_pairs_fill(ax, ay, bx, by, tol, outx, outy)
    return outx + 1j * outy


def cluster_points(z, tol, force_numpy=False):
    """Single-linkage clusters of a point set; returns (count, centroids).

    Points chained by gaps smaller than tol belong to one cluster, so a run
    of near-coincident samples along a tangency arc counts once.
    """
    z = np.asarray(z, dtype=complex)
    if z.size == 0:
        return 0, np.empty(0, dtype=complex)
    order = np.argsort(z.real, kind="stable")
    xs = np.ascontiguousarray(z.real[order])
    ys = np.ascontiguousarray(z.imag[order])
    if NUMBA_ENABLED and not force_numpy:
        labels = _cluster_labels_jit(xs, ys, tol)
    else:
        labels = _cluster_labels(xs, ys, tol)
    roots, inverse = np.unique(labels, return_inverse=True)
    sums = np.zeros(roots.size, dtype=complex)
    counts = np.zeros(roots.size)
    np.add.at(sums, inverse, xs + 1j * ys)
    np.add.at(counts, inverse, 1.0)
    return roots.size, sums / counts


def symmetric_hausdorff(za, zb):
    """max(sup_a inf_b |a-b|, sup_b inf_a |a-b|) for two point clouds."""
    za = np.asarray(za, dtype=complex).reshape(-1)
    zb = np.asarray(zb, dtype=complex).reshape(-1)
    if za.size == 0 or zb.size == 0:
        raise ValueError("empty point set")
    d_ab = 0.0
    chunk = 1024
    mins_b = np.full(zb.shape, np.inf)
    for s in range(0, za.size, chunk):
        block = np.abs(za[s : s + chunk, None] - zb[None, :])
        d_ab = max(d_ab, float(block.min(axis=1).max()))
        np.minimum(mins_b, block.min(axis=0), out=mins_b)
    return max(d_ab, float(mins_b.max()))
