"""Scalar root finding shared by the constructions."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np


class ConstructionError(RuntimeError):
    """A numerical construction could not bracket or reach its target."""

    def __init__(self, message: str, **values):
        super().__init__(message)
        self.values = values


def bisect(f: Callable[[float], float], lo: float, hi: float, flo: float | None = None,
           tol: float = 1e-13, maxiter: int = 200) -> float:
    """Bisection on a sign change of ``f`` over ``[lo, hi]``.

    Returns the midpoint of the final bracket, so plateaus of zeros give a
    deterministic point inside the plateau.
    """
    if flo is None:
        flo = f(lo)
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def first_root(f: Callable[[float], float], lo: float, hi: float, n_grid: int = 32,
               tol: float = 1e-13, what: str = "root") -> float:
    """Smallest root of ``f`` on ``[lo, hi]`` detected on a uniform grid."""
    ts = np.linspace(lo, hi, n_grid + 1)
    t0 = float(ts[0])
    f0 = f(t0)
    if f0 == 0.0:
        return t0
    for t1 in ts[1:]:
        t1 = float(t1)
        f1 = f(t1)
        if f1 == 0.0:
            return t1
        if (f0 < 0.0) != (f1 < 0.0):
            return bisect(f, t0, t1, flo=f0, tol=tol)
        t0, f0 = t1, f1
    raise ConstructionError(
        f"construction failed: no sign change for {what} on [{lo:g}, {hi:g}]",
        f_lo=f(lo), f_hi=f(hi),
    )


def circular_distance(a: float, b: float) -> float:
    d = (a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)
