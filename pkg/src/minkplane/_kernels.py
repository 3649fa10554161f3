"""
Hot numeric kernels: norm evaluation, norm sections, isosceles root scans.

A norm is passed to every kernel as ``(p, polar)``.  When ``polar`` has rows
it holds one functional from each ``±`` pair of the polar polygon and the norm
is ``max |u . v|``; otherwise ``p`` selects the l_p closed form (``inf`` allowed).

The kernels are compiled with numba unless ``MINKPLANE_DISABLE_NUMBA`` is set
to a truthy value (or numba is missing), in which case the same source runs as
plain Python and the vectorised helpers use numpy broadcasting instead.
"""

import math
import os

import numpy as np

_FLAG = os.environ.get("MINKPLANE_DISABLE_NUMBA", "").strip().lower()

NUMBA_ENABLED = False
if _FLAG not in {"1", "true", "yes", "on"}:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dependency
        pass

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TWO_PI = 2.0 * math.pi


def _jit(fn):
    if NUMBA_ENABLED:
        return njit(cache=True, nogil=True)(fn)
    return fn


@_jit
def norm_xy(x, y, p, polar):
    if polar.shape[0] > 0:
        best = 0.0
        for i in range(polar.shape[0]):
            v = abs(polar[i, 0] * x + polar[i, 1] * y)
            if v > best:
                best = v
        return best
    ax = abs(x)
    ay = abs(y)
    if p == 1.0:
        return ax + ay
    if p == 2.0:
        return math.hypot(x, y)
    m = max(ax, ay)
    if m == 0.0 or math.isinf(p):
        return m
    # scaled to keep large exponents finite
    return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)


@_jit
def unit_xy(theta, p, polar):
    c = math.cos(theta)
    s = math.sin(theta)
    n = norm_xy(c, s, p, polar)
    return c / n, s / n


@_jit
def section_min(ax, ay, dx, dy, tmin, tmax, p, polar, tol, maxiter):
    """Minimise ``t -> ||a + t d||`` over ``[tmin, tmax]``; returns ``(t, value)``.

    Golden-section search on a bracket grown by doubling around the Euclidean
    projection until the minimum is interior, then clipped to the bounds.
    """
    dd = dx * dx + dy * dy
    c = -(ax * dx + ay * dy) / dd
    h = math.sqrt((ax * ax + ay * ay) / dd)
    if h == 0.0:
        h = 1.0
    fc = norm_xy(ax + c * dx, ay + c * dy, p, polar)
    lo = c - h
    hi = c + h
    for _ in range(80):
        lo = c - h
        hi = c + h
        flo = norm_xy(ax + lo * dx, ay + lo * dy, p, polar)
        fhi = norm_xy(ax + hi * dx, ay + hi * dy, p, polar)
        if flo >= fc and fhi >= fc:
            break
        h *= 2.0

    a = max(lo, tmin)
    b = min(hi, tmax)
    if a > b:
        t = tmin if tmin > hi else tmax
        return t, norm_xy(ax + t * dx, ay + t * dy, p, polar)

    scale = max(1.0, abs(a) + abs(b))
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1 = norm_xy(ax + x1 * dx, ay + x1 * dy, p, polar)
    f2 = norm_xy(ax + x2 * dx, ay + x2 * dy, p, polar)
    it = 0
    while b - a > tol * scale and it < maxiter:
        if f1 <= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - INV_PHI * (b - a)
            f1 = norm_xy(ax + x1 * dx, ay + x1 * dy, p, polar)
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + INV_PHI * (b - a)
            f2 = norm_xy(ax + x2 * dx, ay + x2 * dy, p, polar)
        it += 1

    best_t = 0.5 * (a + b)
    best_f = norm_xy(ax + best_t * dx, ay + best_t * dy, p, polar)
    if f1 < best_f:
        best_t, best_f = x1, f1
    if f2 < best_f:
        best_t, best_f = x2, f2
    # bound minimisers are returned exactly
    if not math.isinf(tmin) and a <= tmin:
        fb = norm_xy(ax + tmin * dx, ay + tmin * dy, p, polar)
        if fb <= best_f:
            best_t, best_f = tmin, fb
    if not math.isinf(tmax) and b >= tmax:
        fb = norm_xy(ax + tmax * dx, ay + tmax * dy, p, polar)
        if fb <= best_f:
            best_t, best_f = tmax, fb
    return best_t, best_f


@_jit
def _iso_gap(theta, xx, xy, r, p, polar):
    ux, uy = unit_xy(theta, p, polar)
    zx = r * ux
    zy = r * uy
    return norm_xy(xx + zx, xy + zy, p, polar) - norm_xy(xx - zx, xy - zy, p, polar)


@_jit
def iso_roots(xx, xy, r, p, polar, n_grid, tol):
    """Gauge angles ``theta`` in ``[0, 2 pi)`` where ``x`` is isosceles
    orthogonal to ``r * unit(theta)``: sign changes on a uniform grid, each
    refined by bisection to ``tol`` (midpoint of the final bracket)."""
    out = np.empty(n_grid + 1)
    k = 0
    th0 = 0.0
    g0 = _iso_gap(th0, xx, xy, r, p, polar)
    for i in range(n_grid):
        th1 = TWO_PI * (i + 1) / n_grid
        g1 = _iso_gap(th1, xx, xy, r, p, polar)
        if g0 == 0.0:
            out[k] = th0
            k += 1
        elif g0 * g1 < 0.0:
            lo = th0
            hi = th1
            glo = g0
            for _ in range(200):
                if hi - lo <= tol:
                    break
                mid = 0.5 * (lo + hi)
                gm = _iso_gap(mid, xx, xy, r, p, polar)
                if gm == 0.0:
                    lo = mid
                    hi = mid
                    break
                if (gm < 0.0) == (glo < 0.0):
                    lo = mid
                    glo = gm
                else:
                    hi = mid
            root = 0.5 * (lo + hi)
            if root >= TWO_PI:
                root -= TWO_PI
            out[k] = root
            k += 1
        th0 = th1
        g0 = g1
    return out[:k]


@_jit
def _norm_many_loop(xs, ys, p, polar):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = norm_xy(xs[i], ys[i], p, polar)
    return out


def _norm_many_numpy(xs, ys, p, polar):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if polar.shape[0] > 0:
        return np.max(np.abs(np.outer(xs, polar[:, 0]) + np.outer(ys, polar[:, 1])), axis=1)
    ax, ay = np.abs(xs), np.abs(ys)
    if p == 1.0:
        return ax + ay
    if p == 2.0:
        return np.hypot(xs, ys)
    m = np.maximum(ax, ay)
    if math.isinf(p):
        return m
    safe = np.where(m > 0.0, m, 1.0)
    return np.where(m > 0.0, m * ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p), 0.0)


norm_many = _norm_many_loop if NUMBA_ENABLED else _norm_many_numpy
