"""C-orthocentric systems: the affine construction, antitriangles,
circumcenter sets and the Euclidean radical axis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import bisect
from .plane import Circumference, Line, Plane, as_point, cross, point_symmetry

POINT_NAMES = ("x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4", "q", "m1", "m2", "m3", "g")


@dataclass(frozen=True, eq=False)
class Triangle:
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        a, b, c = self.vertices
        if np.array_equal(a, b) or np.array_equal(a, c) or np.array_equal(b, c):
            raise ValueError("triangle vertices must be pairwise distinct")

    @property
    def vertices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.x1, self.x2, self.x3

    @property
    def midpoints(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.x2 + self.x3) / 2.0, (self.x1 + self.x3) / 2.0, (self.x1 + self.x2) / 2.0

    def is_degenerate(self, rel: float = 1e-12) -> bool:
        u, v = self.x2 - self.x1, self.x3 - self.x1
        return abs(cross(u, v)) <= rel * math.hypot(*u) * math.hypot(*v)


@dataclass(eq=False)
class OrthoScenario:
    """Named points of a C-orthocentric construction.

    ``extras`` holds scenario-builder metadata (kind, seed, norm, t0) and is
    serialized alongside the points.
    """

    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    x4: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray
    p4: np.ndarray
    q: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    m3: np.ndarray
    g: np.ndarray
    lam: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def xs(self) -> tuple:
        return self.x1, self.x2, self.x3, self.x4

    @property
    def ps(self) -> tuple:
        return self.p1, self.p2, self.p3, self.p4

    def to_dict(self) -> dict:
        out = {name: [float(v) for v in getattr(self, name)] for name in POINT_NAMES}
        out["lambda"] = float(self.lam)
        out.update(self.extras)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OrthoScenario":
        try:
            pts = {name: as_point(data[name]) for name in POINT_NAMES}
            lam = float(data["lambda"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed scenario: {exc}") from exc
        extras = {k: v for k, v in data.items() if k not in POINT_NAMES and k != "lambda"}
        return cls(**pts, lam=lam, extras=extras)


def build_system(x1, x2, x3, p4) -> OrthoScenario:
    """All points of the system generated by a triangle and a point ``p4``.

    Pure affine arithmetic, so valid in every norm.
    """
    tri = Triangle(x1, x2, x3)
    p4 = as_point(p4)
    x1, x2, x3 = tri.vertices
    m1, m2, m3 = tri.midpoints
    q = (x1 + x2 + x3 - p4) / 2.0
    return OrthoScenario(
        x1=x1, x2=x2, x3=x3, x4=point_symmetry(q, p4),
        p1=point_symmetry(m1, p4), p2=point_symmetry(m2, p4), p3=point_symmetry(m3, p4), p4=p4,
        q=q, m1=m1, m2=m2, m3=m3, g=(x1 + x2 + x3) / 3.0,
    )


def antitriangle(tri: Triangle, p4) -> Triangle:
    p4 = as_point(p4)
    return Triangle(*(point_symmetry(m, p4) for m in tri.midpoints))


_PAIRS = np.array(list(itertools.combinations(range(4), 2)))
_PERMS = np.array(list(itertools.permutations(range(4))))


def system_arrays(x1, x2, x3, p4) -> dict[str, np.ndarray]:
    """Vectorised :func:`build_system` on ``(N, 2)`` arrays (no distinctness check)."""
    x1, x2, x3, p4 = (np.asarray(v, dtype=float) for v in (x1, x2, x3, p4))
    m1, m2, m3 = (x2 + x3) / 2.0, (x1 + x3) / 2.0, (x1 + x2) / 2.0
    q = (x1 + x2 + x3 - p4) / 2.0
    return {"x1": x1, "x2": x2, "x3": x3, "x4": 2.0 * q - p4,
            "p1": 2.0 * m1 - p4, "p2": 2.0 * m2 - p4, "p3": 2.0 * m3 - p4, "p4": p4,
            "q": q, "m1": m1, "m2": m2, "m3": m3, "g": (x1 + x2 + x3) / 3.0}


def identity_defects_batch(pts: dict) -> dict[str, float]:
    """Largest componentwise error of each of the four affine identities over a batch."""
    xs = np.stack([pts[k] for k in ("x1", "x2", "x3", "x4")])
    ps = np.stack([pts[k] for k in ("p1", "p2", "p3", "p4")])
    q = np.asarray(pts["q"])
    item1 = np.abs((xs + ps) / 2.0 - q).max()
    i, j = _PAIRS[:, 0], _PAIRS[:, 1]
    item2 = np.abs((xs[i] - xs[j]) - (ps[j] - ps[i])).max()
    i, j, k, l = _PERMS.T
    item3 = np.abs((xs[i] - ps[j]) - (ps[k] - xs[l])).max()
    g, p4, x4 = (np.asarray(pts[k]) for k in ("g", "p4", "x4"))
    k_ = -2.0  # H_{g,k}(p4) = (1 - k) g + k p4
    item4 = np.abs((1.0 - k_) * g + k_ * p4 - x4).max()
    return {"item1": float(item1), "item2": float(item2), "item3": float(item3), "item4": float(item4)}


def identity_defects(sc: OrthoScenario) -> dict[str, float]:
    return identity_defects_batch({name: getattr(sc, name) for name in POINT_NAMES})


# ---------------------------------------------------------------------------
# circumcenters


@dataclass(frozen=True)
class CircumcenterSet:
    """``kind`` is ``empty``, ``point``, ``points`` or ``segment``; segments
    are given by their two endpoints (1e-6 resolution)."""

    kind: str
    points: tuple = ()

    def __len__(self):
        return len(self.points)


def radius_discrepancy(plane: Plane, tri: Triangle, p) -> float:
    d = [plane.norm(as_point(p) - v) for v in tri.vertices]
    return max(d) - min(d)


def _bisector_point(plane: Plane, x1, x2, h: float) -> np.ndarray:
    # along the line parallel to x2 - x1 at offset h, s -> ||P - x1|| - ||P - x2|| is
    # non-decreasing; return the midpoint of its zero set
    e = x2 - x1
    n = np.array([-e[1], e[0]])
    base = (x1 + x2) / 2.0 + h * n

    def G(s):
        y = base + s * e
        return plane.norm(y - x1) - plane.norm(y - x2)

    step = 1.0
    while G(-step) >= 0.0:
        step *= 2.0
        if step > 1e12:  # pragma: no cover
            break
    lo_neg = -step
    step = 1.0
    while G(step) <= 0.0:
        step *= 2.0
        if step > 1e12:  # pragma: no cover
            break
    hi_pos = step
    # left edge: last s with G < 0; right edge: first s with G > 0
    left = bisect(lambda s: -1.0 if G(s) < 0.0 else 1.0, lo_neg, hi_pos, flo=-1.0, tol=1e-14)
    right = bisect(lambda s: 1.0 if G(s) > 0.0 else -1.0, lo_neg, hi_pos, flo=-1.0, tol=1e-14)
    return base + 0.5 * (left + right) * e


def circumcenters(plane: Plane, tri: Triangle, n_scan: int = 801, span: float = 12.0) -> CircumcenterSet:
    """Points equidistant from the three vertices.

    The equidistant curve of ``x1, x2`` is traced by offset ``h`` from the
    midpoint; ``F(h) = ||P(h) - x1|| - ||P(h) - x3||`` is scanned on a
    sinh-spaced grid, and sign changes are refined by bisection.  Runs of zeros
    are reported as a segment.
    """
    if tri.is_degenerate():
        raise ValueError("degenerate triangle")
    x1, x2, x3 = tri.vertices

    def P(h):
        return _bisector_point(plane, x1, x2, h)

    def F(h):
        y = P(h)
        return plane.norm(y - x1) - plane.norm(y - x3)

    hs = np.sinh(np.linspace(-span, span, n_scan))
    fs = np.array([F(float(h)) for h in hs])
    scale = max(plane.norm(x2 - x1), plane.norm(x3 - x1))
    ztol = 1e-12 * scale

    zero_runs: list[tuple[float, float]] = []
    roots: list[float] = []
    i = 0
    while i < len(hs):
        if abs(fs[i]) <= ztol:
            j = i
            while j + 1 < len(hs) and abs(fs[j + 1]) <= ztol:
                j += 1
            zero_runs.append((float(hs[i]), float(hs[j])))
            i = j + 1
            continue
        if i + 1 < len(hs) and abs(fs[i + 1]) > ztol and (fs[i] < 0.0) != (fs[i + 1] < 0.0):
            roots.append(bisect(F, float(hs[i]), float(hs[i + 1]), flo=float(fs[i]), tol=1e-15))
        i += 1

    pts = []
    seg = None
    for a, b in zero_runs:
        if a == b:
            roots.append(a)
            continue
        # widen each end to 1e-6 resolution within the neighbouring grid cells
        ia = int(np.searchsorted(hs, a))
        ib = int(np.searchsorted(hs, b))
        lo_out = float(hs[ia - 1]) if ia > 0 else a
        hi_out = float(hs[ib + 1]) if ib + 1 < len(hs) else b
        ea = bisect(lambda h: 1.0 if abs(F(h)) <= ztol else -1.0, lo_out, a, flo=-1.0, tol=1e-6) \
            if lo_out < a else a
        eb = bisect(lambda h: -1.0 if abs(F(h)) <= ztol else 1.0, b, hi_out, flo=-1.0, tol=1e-6) \
            if hi_out > b else b
        seg = (P(ea), P(eb))
    for h in roots:
        y = P(h)
        if radius_discrepancy(plane, tri, y) <= 1e-8 * max(1.0, scale):
            pts.append(y)

    if seg is not None:
        return CircumcenterSet("segment", seg)
    if not pts:
        return CircumcenterSet("empty")
    if len(pts) == 1:
        return CircumcenterSet("point", (pts[0],))
    return CircumcenterSet("points", tuple(pts))


def c_orthocenter(plane: Plane, tri: Triangle, p4, tol: float = 1e-6) -> np.ndarray:
    """``x4 = S_q(p4)`` for a circumcenter ``p4`` of ``tri``."""
    p4 = as_point(p4)
    if radius_discrepancy(plane, tri, p4) > tol:
        raise ValueError("p4 is not a circumcenter of the triangle")
    return build_system(*tri.vertices, p4).x4


def radical_axis(plane: Plane, c1: Circumference, c2: Circumference) -> Line:
    """Locus of equal power with respect to two circles (Euclidean planes only)."""
    if not plane.is_euclidean:
        raise ValueError("radical axis is Euclidean-only")
    a, b = c1.center, c2.center
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        raise ValueError("concentric circles have no radical axis")
    # a + s d with |y - a|^2 - r1^2 = |y - b|^2 - r2^2
    s = (dd + c1.radius ** 2 - c2.radius ** 2) / (2.0 * dd)
    return Line(a + s * d, np.array([-d[1], d[0]]))
