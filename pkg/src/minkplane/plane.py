"""
Normed planes and their elementary geometry.

A :class:`Plane` wraps an l_p norm or a centrally symmetric polygonal gauge
together with its dual.  Points are ``numpy`` arrays of shape ``(2,)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .numerics import bisect

DEFAULT_TOL = 1e-9
GOLDEN_TOL = 1e-12
GOLDEN_MAXITER = 200

_EMPTY = np.empty((0, 2))
_L1_VERTICES = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))
_LINF_VERTICES = ((1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0))


def point(a: float, b: float) -> np.ndarray:
    return np.array([float(a), float(b)])


def as_point(v) -> np.ndarray:
    out = np.asarray(v, dtype=float).reshape(2)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"non-finite coordinates: {out}")
    return out


def cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def scaled_tol(tol: float, *magnitudes: float) -> float:
    """Absolute tolerance scaled by ``max(1, magnitudes...)``."""
    return tol * max(1.0, *(abs(m) for m in magnitudes))


# ---------------------------------------------------------------------------
# norm specifications


@dataclass(frozen=True)
class NormSpec:
    """Either ``lp`` with exponent ``p`` or ``polygon`` with CCW symmetric vertices."""

    kind: str
    p: float = math.nan
    vertices: tuple = ()

    @classmethod
    def lp(cls, p: float) -> "NormSpec":
        p = float(p)
        if math.isnan(p) or p < 1.0:
            raise ValueError("p must be ≥ 1")
        return cls("lp", p=p)

    @classmethod
    def polygon(cls, vertices) -> "NormSpec":
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise ValueError("polygon vertices must be a list of (x, y) pairs")
        if not np.all(np.isfinite(verts)):
            raise ValueError("polygon vertices must be finite")
        m = verts.shape[0]
        if m < 4 or m % 2:
            raise ValueError("a symmetric polygon needs an even number (≥ 4) of vertices")
        half = m // 2
        scale = float(np.max(np.abs(verts)))
        if not np.allclose(verts[half:], -verts[:half], rtol=0.0, atol=1e-12 * max(1.0, scale)):
            raise ValueError("polygon must be centrally symmetric (v in list implies -v in list, in CCW order)")
        # enforce exact symmetry so that ||-v|| == ||v|| bit for bit
        verts = np.concatenate([verts[:half], -verts[:half]])
        for i in range(m):
            a, b, c = verts[i], verts[(i + 1) % m], verts[(i + 2) % m]
            if cross(a, b) <= 0.0:
                raise ValueError("polygon must be counterclockwise with the origin strictly inside")
            if cross(b - a, c - b) <= 1e-14 * max(1.0, scale) ** 2:
                raise ValueError("polygon vertices must be in strictly convex position")
        return cls("polygon", vertices=tuple((float(x), float(y)) for x, y in verts))

    def __str__(self) -> str:
        if self.kind == "lp":
            return "lp:inf" if math.isinf(self.p) else f"lp:{self.p!r}"
        return "polygon:" + ";".join(f"{x!r},{y!r}" for x, y in self.vertices)


def parse_norm(text: str) -> NormSpec:
    """Parse ``lp:<p>`` (``p`` a decimal ≥ 1 or ``inf``) or ``polygon:x1,y1;x2,y2;...``."""
    kind, sep, body = text.strip().partition(":")
    if not sep:
        raise ValueError(f"malformed norm spec {text!r}: expected 'lp:<p>' or 'polygon:...'")
    kind = kind.lower()
    if kind == "lp":
        body = body.strip().lower()
        if body in {"inf", "infinity", "∞"}:
            return NormSpec.lp(math.inf)
        try:
            p = float(body)
        except ValueError:
            raise ValueError(f"malformed exponent {body!r}") from None
        return NormSpec.lp(p)
    if kind == "polygon":
        try:
            verts = [tuple(float(c) for c in pair.split(",")) for pair in body.split(";") if pair.strip()]
        except ValueError:
            raise ValueError(f"malformed polygon vertex list {body!r}") from None
        if any(len(v) != 2 for v in verts):
            raise ValueError("each polygon vertex needs exactly two coordinates")
        return NormSpec.polygon(verts)
    raise ValueError(f"unknown norm kind {kind!r}")


def regular_polygon(n: int, phase: float = 0.0) -> NormSpec:
    if n % 2:
        raise ValueError("a regular symmetric polygon needs an even vertex count")
    angles = phase + 2.0 * math.pi * np.arange(n) / n
    return NormSpec.polygon(np.column_stack([np.cos(angles), np.sin(angles)]))


def _edge_functionals(verts: np.ndarray) -> np.ndarray:
    # u_i . v_i = u_i . v_{i+1} = 1 for edge i
    nxt = np.roll(verts, -1, axis=0)
    den = verts[:, 0] * nxt[:, 1] - verts[:, 1] * nxt[:, 0]
    return np.column_stack([(nxt[:, 1] - verts[:, 1]) / den, (verts[:, 0] - nxt[:, 0]) / den])


class Plane:
    """A Minkowski plane: a norm, its dual, and cached kernel parameters.

    Immutable after construction.
    """

    def __init__(self, spec: NormSpec | str):
        if isinstance(spec, str):
            spec = parse_norm(spec)
        self.spec = spec
        if spec.kind == "lp":
            p = spec.p
            q = math.inf if p == 1.0 else 1.0 if math.isinf(p) else p / (p - 1.0)
            self.dual_spec = NormSpec.lp(q)
            self._p, self._polar = p, _EMPTY
            self._dual_p, self._dual_polar = q, _EMPTY
            shape = _L1_VERTICES if p == 1.0 else _LINF_VERTICES if math.isinf(p) else None
        elif spec.kind == "polygon":
            verts = np.array(spec.vertices, dtype=float)
            functionals = _edge_functionals(verts)
            half = len(verts) // 2
            self.dual_spec = NormSpec.polygon(functionals)
            self._p, self._polar = 0.0, np.ascontiguousarray(functionals[:half])
            self._dual_p, self._dual_polar = 0.0, np.ascontiguousarray(verts[:half])
            shape = spec.vertices
        else:
            raise ValueError(f"unknown norm kind {spec.kind!r}")
        if shape is None:
            self._vertices = self._functionals = None
        else:
            self._vertices = np.array(shape, dtype=float)
            self._functionals = _edge_functionals(self._vertices)

    def __repr__(self) -> str:
        return f"Plane({str(self.spec)!r})"

    @property
    def is_euclidean(self) -> bool:
        return self.spec.kind == "lp" and self.spec.p == 2.0

    @property
    def is_polygonal(self) -> bool:
        """True when the unit circle is a polygon (polygon gauges, l1, l∞)."""
        return self._vertices is not None

    @property
    def dual(self) -> "Plane":
        return Plane(self.dual_spec)

    def norm(self, v) -> float:
        return K.norm_xy(float(v[0]), float(v[1]), self._p, self._polar)

    def dual_norm(self, f) -> float:
        if isinstance(f, Functional):
            f = (f.a, f.b)
        return K.norm_xy(float(f[0]), float(f[1]), self._dual_p, self._dual_polar)

    def norms(self, vs) -> np.ndarray:
        vs = np.ascontiguousarray(vs, dtype=float).reshape(-1, 2)
        return K.norm_many(np.ascontiguousarray(vs[:, 0]), np.ascontiguousarray(vs[:, 1]), self._p, self._polar)

    def unit_point(self, theta: float) -> np.ndarray:
        x, y = K.unit_xy(float(theta), self._p, self._polar)
        return np.array([x, y])

    def circle_points(self, n: int, center=(0.0, 0.0), radius: float = 1.0) -> np.ndarray:
        theta = 2.0 * math.pi * np.arange(n) / n
        u = np.column_stack([np.cos(theta), np.sin(theta)])
        return np.asarray(center, dtype=float) + radius * u / self.norms(u)[:, None]

    def section_min(self, a, d, tmin: float = -math.inf, tmax: float = math.inf) -> tuple[float, float]:
        """``min_t ||a + t d||`` over ``[tmin, tmax]`` by golden-section search."""
        return K.section_min(float(a[0]), float(a[1]), float(d[0]), float(d[1]), float(tmin), float(tmax),
                             self._p, self._polar, GOLDEN_TOL, GOLDEN_MAXITER)


def norm_eval(plane: Plane, v) -> float:
    return plane.norm(v)


def dual_norm_eval(plane: Plane, f) -> float:
    """``||f||* = max{f(x) : ||x|| <= 1}``."""
    return plane.dual_norm(f)


def unit_point(plane: Plane, theta: float) -> np.ndarray:
    return plane.unit_point(theta)


# ---------------------------------------------------------------------------
# primitive objects


@dataclass(frozen=True)
class Functional:
    a: float
    b: float

    def __call__(self, v) -> float:
        return self.a * float(v[0]) + self.b * float(v[1])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b])

    @classmethod
    def annihilating(cls, direction) -> "Functional":
        """``(-dy, dx)``, sign-normalised so the first nonzero coordinate is positive."""
        a, b = -float(direction[1]), float(direction[0])
        if a < 0.0 or (a == 0.0 and b < 0.0):
            a, b = -a, -b
        if a == 0.0 and b == 0.0:
            raise ValueError("zero direction has no annihilating functional")
        return cls(a + 0.0, b + 0.0)


def _direction(d) -> np.ndarray:
    d = as_point(d)
    if d[0] == 0.0 and d[1] == 0.0:
        raise ValueError("direction vector must be nonzero")
    return d


@dataclass(frozen=True, eq=False)
class Line:
    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "direction", _direction(self.direction))

    @classmethod
    def through(cls, p, q) -> "Line":
        p = as_point(p)
        return cls(p, as_point(q) - p)

    def at(self, t: float) -> np.ndarray:
        return self.base + t * self.direction

    def side(self, y) -> float:
        """Signed Euclidean offset of ``y`` (positive on the left of ``direction``)."""
        d = self.direction
        return cross(d, as_point(y) - self.base) / math.hypot(d[0], d[1])


@dataclass(frozen=True, eq=False)
class Ray:
    apex: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "apex", as_point(self.apex))
        object.__setattr__(self, "direction", _direction(self.direction))

    @classmethod
    def through(cls, apex, q) -> "Ray":
        apex = as_point(apex)
        return cls(apex, as_point(q) - apex)

    @property
    def line(self) -> Line:
        return Line(self.apex, self.direction)


@dataclass(frozen=True, eq=False)
class Segment:
    p: np.ndarray
    q: np.ndarray
    allow_degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", as_point(self.p))
        object.__setattr__(self, "q", as_point(self.q))
        if not self.allow_degenerate and np.array_equal(self.p, self.q):
            raise ValueError("segment endpoints coincide")


@dataclass(frozen=True, eq=False)
class Circumference:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.radius > 0.0) or not math.isfinite(self.radius):
            raise ValueError("radius must be positive")

    def gap(self, plane: Plane, y) -> float:
        """``||y - center|| - radius``."""
        return plane.norm(as_point(y) - self.center) - self.radius

    def contains(self, plane: Plane, y, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.gap(plane, y)) <= scaled_tol(tol, self.radius)


UNIT_CIRCLE = Circumference(np.zeros(2), 1.0)


# ---------------------------------------------------------------------------
# distances


def dist_point_line(plane: Plane, x, line: Line, method: str = "functional") -> float:
    """Distance from ``x`` to ``line``.

    ``method="functional"`` uses ``|f(x - base)| / ||f||*`` with ``f`` annihilating
    the direction; ``method="search"`` minimises ``||x - (base + t dir)||``
    directly.  The two agree to ~1e-12.
    """
    a = as_point(x) - line.base
    if method == "functional":
        f = Functional.annihilating(line.direction)
        return abs(f(a)) / plane.dual_norm((f.a, f.b))
    if method == "search":
        return plane.section_min(a, -line.direction)[1]
    raise ValueError(f"unknown method {method!r}")


def dist_point_ray(plane: Plane, x, ray: Ray) -> float:
    return plane.section_min(as_point(x) - ray.apex, -ray.direction, 0.0)[1]


def dist_point_segment(plane: Plane, x, seg: Segment) -> float:
    d = seg.q - seg.p
    if not d.any():
        return plane.norm(as_point(x) - seg.p)
    return plane.section_min(as_point(x) - seg.p, -d, 0.0, 1.0)[1]


# ---------------------------------------------------------------------------
# support structure


def _unit_dir(plane: Plane, d: np.ndarray) -> np.ndarray:
    return d / plane.norm(d)


def support_directions(plane: Plane, w, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Extreme directions of the support cone of the unit circle at ``w``.

    Both are unit vectors oriented counterclockwise along the circle; the first
    is the counterclockwise-most extreme.  They coincide at smooth points.
    """
    w = as_point(w)
    if plane.is_polygonal:
        vals = plane._functionals @ w
        active = np.flatnonzero(vals >= vals.max() - tol)
        verts = plane._vertices
        m = len(verts)
        if len(active) == 1:
            i = int(active[0])
            d = _unit_dir(plane, verts[(i + 1) % m] - verts[i])
            return d, d.copy()
        j, k = int(active[0]), int(active[-1])
        if (j + 1) % m != k:
            j, k = k, j
        out_edge = _unit_dir(plane, verts[(k + 1) % m] - verts[k])
        in_edge = _unit_dir(plane, verts[(j + 1) % m] - verts[j])
        return out_edge, in_edge
    p = plane.spec.p
    s = max(abs(w[0]), abs(w[1]))
    g = np.sign(w) * (np.abs(w) / s) ** (p - 1.0)
    d = _unit_dir(plane, np.array([-g[1], g[0]]))
    return d, d.copy()


def support_lines_at(plane: Plane, circ: Circumference, e, tol: float = DEFAULT_TOL) -> tuple[Line, Line]:
    e = as_point(e)
    w = (e - circ.center) / circ.radius
    if abs(plane.norm(w) - 1.0) > tol:
        raise ValueError("not a boundary point")
    d1, d2 = support_directions(plane, w, tol)
    return Line(e, d1), Line(e, d2)


def exposed_points(plane: Plane, f) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors ``u`` attaining ``f(u) = ||f||*``.

    For a polygon face the counterclockwise-most endpoint comes first.  Any
    returned ``u`` satisfies ``u ⊥_B d`` for every ``d`` annihilated by ``f``.
    """
    f = as_point(f)
    if plane.is_polygonal:
        verts = plane._vertices
        vals = verts @ f
        top = vals.max()
        active = np.flatnonzero(vals >= top - 1e-12 * max(1.0, abs(top)))
        if len(active) == 1:
            v = verts[int(active[0])].copy()
            return v, v.copy()
        m = len(verts)
        j, k = int(active[0]), int(active[-1])
        if (j + 1) % m != k:
            j, k = k, j
        return verts[k].copy(), verts[j].copy()
    q = plane.dual_spec.p
    s = max(abs(f[0]), abs(f[1]))
    u = np.sign(f) * (np.abs(f) / s) ** (q - 1.0) if math.isfinite(q) else np.sign(f)
    u = u / plane.norm(u)
    return u, u.copy()


# ---------------------------------------------------------------------------
# line / circle intersection


@dataclass(frozen=True, eq=False)
class Intersection:
    """``kind`` is ``empty``, ``point``, ``points`` or ``segment``; ``points``
    holds 0, 1 or 2 points (segment endpoints for ``segment``), ordered along
    the line direction."""

    kind: str
    points: tuple = ()
    params: tuple = ()


def intersect_line_circle(plane: Plane, line: Line, circ: Circumference, tol: float = 1e-12) -> Intersection:
    if plane.is_polygonal:
        return _intersect_polygonal(plane, line, circ)
    a = line.base - circ.center
    d = line.direction
    r = circ.radius
    s_star, fmin = plane.section_min(a, d)
    band = scaled_tol(tol, r)
    if fmin > r + band:
        return Intersection("empty")
    if fmin >= r - band:
        return Intersection("point", (line.at(s_star),), (s_star,))

    def gap(s):
        return plane.norm(a + s * d) - r

    roots = []
    for sign in (-1.0, 1.0):
        step = max(1.0, abs(s_star))
        while gap(s_star + sign * step) <= 0.0:
            step *= 2.0
        lo, hi = sorted((s_star, s_star + sign * step))
        roots.append(bisect(gap, lo, hi, tol=1e-16 * max(1.0, abs(lo) + abs(hi)), maxiter=400))
    return Intersection("points", tuple(line.at(s) for s in roots), tuple(roots))


def _intersect_polygonal(plane: Plane, line: Line, circ: Circumference) -> Intersection:
    verts = circ.center + circ.radius * plane._vertices
    p0, d = line.base, line.direction
    dn = math.hypot(d[0], d[1])
    scale = max(1.0, circ.radius, float(np.max(np.abs(verts))), float(np.max(np.abs(p0))))
    params = []
    m = len(verts)
    for i in range(m):
        A, B = verts[i], verts[(i + 1) % m]
        e = B - A
        en = math.hypot(e[0], e[1])
        den = cross(d, e)
        w = A - p0
        if abs(den) <= 1e-13 * dn * en:
            if abs(cross(d, w)) <= 1e-12 * dn * scale:
                sa = float(w @ d) / dn ** 2
                sb = float((B - p0) @ d) / dn ** 2
                lo, hi = sorted((sa, sb))
                return Intersection("segment", (line.at(lo), line.at(hi)), (lo, hi))
            continue
        s = cross(w, e) / den
        tau = cross(w, d) / den
        if -1e-12 <= tau <= 1.0 + 1e-12:
            params.append(s)
    if not params:
        return Intersection("empty")
    params.sort()
    merged = [params[0]]
    for s in params[1:]:
        if (s - merged[-1]) * dn > 1e-12 * scale:
            merged.append(s)
    if len(merged) > 2:
        merged = [merged[0], merged[-1]]
    kind = "point" if len(merged) == 1 else "points"
    return Intersection(kind, tuple(line.at(s) for s in merged), tuple(merged))


# ---------------------------------------------------------------------------
# affine maps and arcs


def point_symmetry(p, w) -> np.ndarray:
    """``S_p(w) = 2p - w``."""
    return 2.0 * as_point(p) - as_point(w)


def homothety(p, k: float, w) -> np.ndarray:
    """``H_{p,k}(w) = (1 - k) p + k w``."""
    return (1.0 - k) * as_point(p) + k * as_point(w)


@dataclass(frozen=True, eq=False)
class Arc:
    """One of the two arcs cut from ``circle`` by the chord ``v -> w``.

    ``side="plus"`` is the arc swept counterclockwise from ``v`` to ``w``, or the
    chord itself when the chord lies in the circle (``flat``).
    """

    plane: Plane
    circle: Circumference
    v: np.ndarray
    w: np.ndarray
    side: str
    flat: bool = False

    def contains(self, y, tol: float = DEFAULT_TOL) -> bool:
        y = as_point(y)
        c = self.circle
        if not c.contains(self.plane, y, tol):
            return False
        band = scaled_tol(tol, c.radius)
        if self.plane.norm(y - self.v) <= band or self.plane.norm(y - self.w) <= band:
            return True
        chord = self.w - self.v
        on_chord = self._on_segment(y, band)
        if self.flat:
            return on_chord if self.side == "plus" else not on_chord
        side = cross(chord, y - self.v)
        eps = 1e-12 * max(1.0, c.radius) ** 2
        return side <= eps if self.side == "plus" else side >= -eps

    def _on_segment(self, y, band) -> bool:
        chord = self.w - self.v
        L = math.hypot(chord[0], chord[1])
        if abs(cross(chord, y - self.v)) / L > band:
            return False
        t = float((y - self.v) @ chord) / L ** 2
        return -band <= t <= 1.0 + band


def split_arcs(plane: Plane, circ: Circumference, v, w, tol: float = DEFAULT_TOL) -> tuple[Arc, Arc]:
    v, w = as_point(v), as_point(w)
    if plane.norm(v - w) <= scaled_tol(tol, circ.radius):
        raise ValueError("arc endpoints must differ")
    if not (circ.contains(plane, v, tol) and circ.contains(plane, w, tol)):
        raise ValueError("arc endpoints must lie on the circle")
    flat = circ.contains(plane, 0.5 * (v + w), tol)
    return (Arc(plane, circ, v, w, "plus", flat), Arc(plane, circ, v, w, "minus", flat))
