"""Busemann and Glogovskij angular bisectors.

Glogovskij bisectors are exposed as signed membership defects rather than
curves: in non-strictly convex planes the equidistant set can be thick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .plane import Functional, Plane, Ray, as_point, cross, dist_point_ray


@dataclass(frozen=True, eq=False)
class AngleSpec:
    """The angle ``∠apb`` with apex ``p``."""

    p: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        for name in ("p", "a", "b"):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        u, v = self.a - self.p, self.b - self.p
        nu, nv = math.hypot(*u), math.hypot(*v)
        if nu == 0.0 or nv == 0.0 or abs(cross(u, v)) <= 1e-12 * nu * nv:
            raise ValueError("degenerate angle: arms are collinear")

    @property
    def arm_a(self) -> Ray:
        return Ray(self.p, self.a - self.p)

    @property
    def arm_b(self) -> Ray:
        return Ray(self.p, self.b - self.p)


def busemann_direction(plane: Plane, ang: AngleSpec) -> np.ndarray:
    u, v = ang.a - ang.p, ang.b - ang.p
    return u / plane.norm(u) + v / plane.norm(v)


def busemann_bisector(plane: Plane, ang: AngleSpec) -> Ray:
    """Ray from the apex along the sum of the unit arm vectors."""
    return Ray(ang.p, busemann_direction(plane, ang))


def busemann_defect(plane: Plane, ang: AngleSpec, x) -> float:
    """Signed sine of the angle from the Busemann direction to ``x - apex``."""
    b = busemann_direction(plane, ang)
    w = as_point(x) - ang.p
    return cross(b, w) / (math.hypot(*b) * math.hypot(*w))


def glogovskij_defect(plane: Plane, ang: AngleSpec, x) -> float:
    """``d(x, [p,a)) - d(x, [p,b))``; ``x`` lies on the Glogovskij bisector iff it vanishes."""
    x = as_point(x)
    return dist_point_ray(plane, x, ang.arm_a) - dist_point_ray(plane, x, ang.arm_b)


def dual_glogovskij_defect(plane: Plane, ang: AngleSpec, x) -> float:
    """Same comparison with functional distances ``|f(x - p)| / ||f||*`` to the arm lines."""
    w = as_point(x) - ang.p
    fa = Functional.annihilating(ang.a - ang.p)
    fb = Functional.annihilating(ang.b - ang.p)
    return abs(fa(w)) / plane.dual_norm((fa.a, fa.b)) - abs(fb(w)) / plane.dual_norm((fb.a, fb.b))
