"""Isosceles, Birkhoff and chordal orthogonality."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .numerics import bisect, circular_distance
from .plane import (
    UNIT_CIRCLE,
    Circumference,
    Line,
    Plane,
    as_point,
    cross,
    intersect_line_circle,
    support_directions,
)

ISO_GRID = 720
ISO_TOL = 1e-13


def isosceles_defect(plane: Plane, x, y) -> float:
    """``||x + y|| - ||x - y||``; zero exactly when ``x ⊥_I y``."""
    x, y = as_point(x), as_point(y)
    return plane.norm(x + y) - plane.norm(x - y)


def birkhoff_defect(plane: Plane, x, y) -> float:
    """``||x|| - min_t ||x + t y||`` (non-negative); zero when ``x ⊥_B y``."""
    x, y = as_point(x), as_point(y)
    if not y.any():
        raise ValueError("Birkhoff orthogonality needs a nonzero direction")
    return plane.norm(x) - plane.section_min(x, y)[1]


def isosceles_roots(plane: Plane, x, r: float) -> np.ndarray:
    """Gauge angles of all ``z`` with ``||z|| = r`` and ``x ⊥_I z`` found on the scan grid."""
    x = as_point(x)
    return K.iso_roots(float(x[0]), float(x[1]), float(r), plane._p, plane._polar, ISO_GRID, ISO_TOL)


def isosceles_partner(plane: Plane, x, r: float, theta_ref: float | None = None) -> np.ndarray:
    """A point ``z`` with ``||z|| = r`` and ``x ⊥_I z``.

    ``theta -> isosceles_defect(x, r u(theta))`` is odd under ``theta -> theta + pi``
    so a sign change always exists.  With ``theta_ref`` the root nearest to it
    (circularly) is returned, otherwise the smallest root angle in ``[0, 2 pi)``.
    """
    x = as_point(x)
    if not x.any():
        raise ValueError("x must be nonzero")
    if not r > 0.0:
        raise ValueError("r must be positive")
    roots = isosceles_roots(plane, x, r)
    if len(roots) == 0:  # pragma: no cover - excluded by the odd symmetry
        raise RuntimeError("no isosceles partner found")
    if theta_ref is None:
        theta = float(np.min(roots))
    else:
        theta = float(min(roots, key=lambda t: circular_distance(t, theta_ref)))
    return r * plane.unit_point(theta)


def birkhoff_partner(plane: Plane, x) -> tuple[np.ndarray, np.ndarray]:
    """Unit directions ``y`` with ``x ⊥_B y``: the extremes of the support cone
    of ``C(O, ||x||)`` at ``x``, counterclockwise-most first."""
    x = as_point(x)
    if not x.any():
        raise ValueError("x must be nonzero")
    return support_directions(plane, x / plane.norm(x))


# ---------------------------------------------------------------------------
# chordal orthogonality (always with respect to the unit circle)


@dataclass(frozen=True, eq=False)
class Chord:
    circle: Circumference
    p: np.ndarray
    q: np.ndarray
    touching: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", as_point(self.p))
        object.__setattr__(self, "q", as_point(self.q))
        if np.array_equal(self.p, self.q):
            raise ValueError("chord endpoints must differ")

    @property
    def direction(self) -> np.ndarray:
        return self.q - self.p


def _check_on_unit_circle(plane: Plane, *pts, tol: float = 1e-9):
    for y in pts:
        if abs(plane.norm(y) - 1.0) > tol:
            raise ValueError("chords must lie on the unit circle")


def _sine(u, v) -> float:
    return abs(cross(u, v)) / (math.hypot(u[0], u[1]) * math.hypot(v[0], v[1]))


def _mod_pi(angle: float) -> float:
    return angle % math.pi


def cone_gap(plane: Plane, at, direction) -> float:
    """Sine of the angular gap between ``direction`` and the support cone of the
    unit circle at ``at`` (lines, so directions are taken modulo pi)."""
    d1, d2 = support_directions(plane, at)
    if np.allclose(d1, d2, rtol=0.0, atol=1e-15):
        return _sine(direction, d1)
    a1 = _mod_pi(math.atan2(d1[1], d1[0]))
    a2 = _mod_pi(math.atan2(d2[1], d2[0]))
    radial = _mod_pi(math.atan2(at[1], at[0]))
    ac = _mod_pi(math.atan2(direction[1], direction[0]))
    span = (a2 - a1) % math.pi
    start = a1
    if (radial - a1) % math.pi < span:
        # the cone is the complementary interval, which avoids the radial line
        start, span = a2, math.pi - span
    if (ac - start) % math.pi <= span:
        return 0.0
    return min(_sine(direction, d1), _sine(direction, d2))


def chordal_check(plane: Plane, c1: Chord, c2: Chord, tol: float = 1e-9) -> float:
    """Parallelism defect of ``c1 ⊥_C c2``.

    The line through ``q2`` and the antipode ``-p2`` must be parallel to ``c1``;
    when ``-p2 = q2`` some support line of the unit circle at ``q2`` must be.
    """
    _check_on_unit_circle(plane, c1.p, c1.q, c2.p, c2.q)
    a = -c2.p
    d1 = c1.direction
    if plane.norm(c2.q - a) > tol:
        return _sine(c2.q - a, d1)
    return cone_gap(plane, c2.q, d1)


def chordal_partner(plane: Plane, c1: Chord, p2) -> Chord:
    """The chord ``[p2, q2]`` with ``c1 ⊥_C [p2, q2]``.

    ``q2`` is the second hit of the line through ``-p2`` with direction ``c1``;
    a flat hit returns its far endpoint, and a line touching only at ``-p2``
    gives ``q2 = -p2`` with ``touching=True``.
    """
    p2 = as_point(p2)
    _check_on_unit_circle(plane, p2)
    a = -p2
    d = c1.direction
    if plane.is_polygonal:
        hit = intersect_line_circle(plane, Line(a, d), UNIT_CIRCLE)
        if hit.kind in ("points", "segment"):
            far = max(hit.params, key=abs)
            if abs(far) * math.hypot(d[0], d[1]) > 1e-12:
                return Chord(UNIT_CIRCLE, p2, a + far * d)
        return Chord(UNIT_CIRCLE, p2, a, touching=True)
    s = _second_hit(plane, a, d)
    if s is None:
        return Chord(UNIT_CIRCLE, p2, a, touching=True)
    return Chord(UNIT_CIRCLE, p2, a + s * d)


def _second_hit(plane: Plane, a, d) -> float | None:
    # a lies on the (strictly convex) unit circle; find the other root of ||a + s d|| = 1
    s_star, fmin = plane.section_min(a, d)
    if fmin >= 1.0:
        return None
    # the other root lies beyond the minimiser, away from s = 0
    sign = 1.0 if s_star > 0.0 else -1.0
    lo = s_star
    step = max(abs(s_star), 1.0)
    hi = s_star + sign * step
    while plane.norm(a + hi * d) <= 1.0:
        step *= 2.0
        hi = s_star + sign * step
    lo, hi = sorted((lo, hi))
    return bisect(lambda s: plane.norm(a + s * d) - 1.0, lo, hi,
                  tol=1e-16 * max(1.0, abs(lo) + abs(hi)), maxiter=400)


def chord(plane: Plane, p, q) -> Chord:
    """A chord of the unit circle, validated."""
    _check_on_unit_circle(plane, as_point(p), as_point(q))
    return Chord(UNIT_CIRCLE, p, q)
