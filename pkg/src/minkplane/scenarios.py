"""Scenario families grown from an isosceles-orthogonal seed pair ``x ⊥_I z``.

Every scenario uses ``x1 = x``, ``x2 = -x``, ``p4 = z``, ``p3 = -z`` and a
third vertex ``x3`` on ``C(p4, lambda)`` with ``lambda = ||x + z||``.  The kinds
differ only in how ``x3`` is chosen.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bisectors import AngleSpec, busemann_direction, glogovskij_defect
from .numerics import first_root
from .orthogonality import isosceles_defect, isosceles_partner
from .plane import Line, Plane, as_point, cross, dist_point_line, exposed_points
from .systems import OrthoScenario, build_system

EPS = 1e-6
ROOT_TOL = 1e-13
ROOT_GRID = 32


class ScenarioKind(str, enum.Enum):
    MEDIAN = "median"
    SUPPORT = "support"
    ISODIST = "isodist"
    BUSEMANN = "busemann"
    GLOGOVSKIJ = "glogovskij"
    DUAL_GLOGOVSKIJ = "dual_glogovskij"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class IsoPair:
    x: np.ndarray
    z: np.ndarray
    lam: float
    theta: float | None = None
    r: float | None = None

    @classmethod
    def make(cls, plane: Plane, x, z, theta=None, r=None, tol: float = 1e-9) -> "IsoPair":
        x, z = as_point(x), as_point(z)
        if not x.any() or not z.any():
            raise ValueError("seed vectors must be nonzero")
        if abs(isosceles_defect(plane, x, z)) > tol * max(1.0, plane.norm(x) + plane.norm(z)):
            raise ValueError("seed pair is not isosceles orthogonal")
        lam = plane.norm(x + z)
        if plane.norm(z) > lam + 1e-12 * max(1.0, lam):
            raise ValueError("seed pair violates ||z|| <= lambda")
        return cls(x, z, lam, theta, r)


def iso_seed(plane: Plane, theta: float, r: float) -> IsoPair:
    """``x`` on the unit circle at angle ``theta``, ``z`` its isosceles partner of norm ``r``."""
    if not r > 0.0:
        raise ValueError("r must be positive")
    x = plane.unit_point(theta)
    z = isosceles_partner(plane, x, r)
    return IsoPair.make(plane, x, z, theta=float(theta), r=float(r))


class ThetaBasis:
    """Coordinates in the basis ``{x/||x||, z/||z||}``."""

    def __init__(self, plane: Plane, pair: IsoPair):
        self.nx = plane.norm(pair.x)
        self.nz = plane.norm(pair.z)
        self.e1 = pair.x / self.nx
        self.e2 = pair.z / self.nz
        self.B = np.column_stack([self.e1, self.e2])
        if abs(np.linalg.det(self.B)) <= 1e-12:
            raise ValueError("seed vectors are linearly dependent")
        self.Binv = np.linalg.inv(self.B)

    def coords(self, v) -> np.ndarray:
        return self.Binv @ as_point(v)

    def point(self, c) -> np.ndarray:
        return self.B @ as_point(c)

    def functional_to_std(self, f) -> np.ndarray:
        # f acts on coordinates c = B^-1 v, so in standard coordinates it is B^-T f
        return self.Binv.T @ as_point(f)


# ---------------------------------------------------------------------------
# the x3(t) family


def _arc_angles(pair: IsoPair) -> tuple[float, float]:
    u0 = (pair.z - pair.x) / pair.lam
    u1 = (pair.z + pair.x) / pair.lam
    a0 = math.atan2(u0[1], u0[0])
    a1 = math.atan2(u1[1], u1[0])
    az = math.atan2(pair.z[1], pair.z[0])
    span = (a1 - a0) % (2.0 * math.pi)
    if (az - a0) % (2.0 * math.pi) < span:
        return a0, span
    return a0, span - 2.0 * math.pi


def family_x3(plane: Plane, pair: IsoPair, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(x3, q, p1, p2)`` at parameter ``t`` in ``[0, 1]``.

    ``x3`` sweeps the arc of ``C(z, lambda)`` from ``2z - x`` to ``2z + x`` on
    the side away from ``p3 = -z``, by linear interpolation of the gauge angle.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    a0, span = _arc_angles(pair)
    if t == 0.0:
        x3 = 2.0 * pair.z - pair.x
    elif t == 1.0:
        x3 = 2.0 * pair.z + pair.x
    else:
        x3 = pair.z + pair.lam * plane.unit_point(a0 + t * span)
    q = (x3 - pair.z) / 2.0
    return x3, q, 2.0 * q - pair.x, 2.0 * q + pair.x


def _angle_at_p3(pair: IsoPair, p1, p2) -> AngleSpec:
    return AngleSpec(-pair.z, p1, p2)


def phi(plane: Plane, pair: IsoPair, t: float) -> float:
    """Sign-carrying comparison of the dual distances from ``p4`` to the lines
    ``<p3, p1(t)>`` and ``<p3, p2(t)>``, positive near ``t = 0`` and negative near ``t = 1``."""
    if not 0.0 < t < 1.0:
        raise ValueError("phi is defined on the open interval (0, 1)")
    basis = ThetaBasis(plane, pair)
    x3 = family_x3(plane, pair, t)[0]
    a3, b3 = basis.coords(x3)
    nx, nz = basis.nx, basis.nz
    f1 = basis.functional_to_std((-b3, a3 - nx))
    f2 = basis.functional_to_std((-b3, a3 + nx))
    return nz * (plane.dual_norm(f2) * (nx - a3) - plane.dual_norm(f1) * (nx + a3))


def _isodist_gap(plane, pair, t):
    _, _, p1, p2 = family_x3(plane, pair, t)
    p3 = -pair.z
    return plane.norm(p3 - p1) - plane.norm(p3 - p2)


def busemann_gap(plane: Plane, sc) -> float:
    """Sine of the angle from ``p4 - p3`` to the Busemann direction of ``∠p1 p3 p2``."""
    b = busemann_direction(plane, AngleSpec(sc.p3, sc.p1, sc.p2))
    w = sc.p4 - sc.p3
    return cross(w, b) / (math.hypot(*w) * math.hypot(*b))


def _busemann_gap_t(plane, pair, t):
    _, _, p1, p2 = family_x3(plane, pair, t)
    p3 = -pair.z
    b = busemann_direction(plane, AngleSpec(p3, p1, p2))
    w = pair.z - p3
    return cross(w, b) / (math.hypot(*w) * math.hypot(*b))


def _glog_gap(plane, pair, t):
    _, _, p1, p2 = family_x3(plane, pair, t)
    return glogovskij_defect(plane, _angle_at_p3(pair, p1, p2), pair.z)


def _root_t(plane, pair, gap, what) -> float:
    return first_root(lambda t: gap(plane, pair, t), EPS, 1.0 - EPS, n_grid=ROOT_GRID, tol=ROOT_TOL, what=what)


def _support_q(plane: Plane, pair: IsoPair) -> np.ndarray:
    # u with u ⊥_B x: a unit maximiser of a functional that annihilates x
    f = np.array([-pair.x[1], pair.x[0]])
    if f @ pair.z < 0.0:
        f = -f
    u = exposed_points(plane, f)[0]
    return 0.5 * pair.lam * u


def build_scenario(plane: Plane, pair: IsoPair, kind) -> OrthoScenario:
    """Complete system for one scenario kind; root-finding kinds record ``t0``."""
    kind = ScenarioKind(kind)
    extras: dict = {"kind": kind.value, "norm": str(plane.spec),
                    "seed_theta": pair.theta, "seed_r": pair.r}
    t0 = None
    if kind is ScenarioKind.MEDIAN:
        q = 0.5 * pair.lam * pair.z / plane.norm(pair.z)
        x3 = 2.0 * q + pair.z
    elif kind is ScenarioKind.SUPPORT:
        x3 = 2.0 * _support_q(plane, pair) + pair.z
    else:
        gap = {
            ScenarioKind.ISODIST: _isodist_gap,
            ScenarioKind.BUSEMANN: _busemann_gap_t,
            ScenarioKind.GLOGOVSKIJ: _glog_gap,
            ScenarioKind.DUAL_GLOGOVSKIJ: phi,
        }[kind]
        t0 = _root_t(plane, pair, gap, kind.value)
        x3 = family_x3(plane, pair, t0)[0]
    if t0 is not None:
        extras["t0"] = t0
    sc = build_system(pair.x, -pair.x, x3, pair.z)
    sc.lam = pair.lam
    sc.extras = extras
    return sc


def median_line_distance(plane: Plane, sc) -> float:
    """``d(p4, <p3, (p1 + p2)/2>)``."""
    mid = (sc.p1 + sc.p2) / 2.0
    return dist_point_line(plane, sc.p4, Line(sc.p3, mid - sc.p3))


def separation_check(plane: Plane, sc, tol: float = 1e-9) -> str:
    """Position of ``<p1, p2>`` relative to ``L1 = <S_x1(p3), S_x2(p3)>``.

    ``separated`` when ``p3`` and ``<p1, p2>`` lie strictly on opposite sides
    of ``L1``, ``coincident`` when the lines agree, ``neither`` otherwise.
    """
    if not (np.allclose(sc.x2, -sc.x1, rtol=0, atol=1e-12) and np.allclose(sc.p3, -sc.p4, rtol=0, atol=1e-12)):
        raise ValueError("scenario is not built from an isosceles seed")
    x, z = sc.x1, sc.p4
    if abs(isosceles_defect(plane, x, z)) > 1e-9 * max(1.0, plane.norm(x) + plane.norm(z)):
        raise ValueError("scenario is not built from an isosceles seed")
    s1, s2 = 2.0 * sc.x1 - sc.p3, 2.0 * sc.x2 - sc.p3
    for d in (s2 - s1, sc.p2 - sc.p1):
        if abs(cross(d, x)) > 1e-9 * math.hypot(*d) * math.hypot(*x):
            raise ValueError("lines L0, L1, L2 are not parallel")
    # signed offsets along z in the {x, z} frame; L1 sits at ||z|| and p3 at -||z||
    basis_inv = np.linalg.inv(np.column_stack([x / plane.norm(x), z / plane.norm(z)]))
    nz = plane.norm(z)
    b_l2 = (basis_inv @ sc.p1)[1]
    if abs(b_l2 - nz) <= tol:
        return "coincident"
    if b_l2 - nz > tol:
        return "separated"
    return "neither"
