"""SVG drawings of a scenario: circles, the three parallel lines, labelled points."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .plane import Plane, cross, point_symmetry
from .systems import OrthoScenario

SCALE = 100.0
MARKER_R = 2.0
MAIN_POINTS = ("x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4")
AUX_POINTS = ("q", "m1", "m2", "m3", "g")


@dataclass(frozen=True)
class FigureSpec:
    scenario: OrthoScenario
    density: int = 720
    labels: bool = True

    def __post_init__(self):
        if int(self.density) < 32:
            raise ValueError("density must be >= 32")


def _f(v: float) -> str:
    s = "%.6f" % v
    return "0.000000" if s == "-0.000000" else s


def _screen(pts: np.ndarray) -> np.ndarray:
    pts = np.atleast_2d(pts)
    return np.column_stack([pts[:, 0] * SCALE, -pts[:, 1] * SCALE])


def _clip_line(a, d, box) -> tuple | None:
    # Liang-Barsky on the infinite line a + t d against box = (xmin, ymin, xmax, ymax)
    lo, hi = -np.inf, np.inf
    for k, (mn, mx) in enumerate(((box[0], box[2]), (box[1], box[3]))):
        if d[k] == 0.0:
            if not mn <= a[k] <= mx:
                return None
            continue
        t1, t2 = (mn - a[k]) / d[k], (mx - a[k]) / d[k]
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if lo > hi:
        return None
    return a + lo * d, a + hi * d


def scene_lines(sc: OrthoScenario) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """``L0 = <x2, x1>``, ``L1 = <S_x1(p3), S_x2(p3)>`` and ``L2 = <p1, p2>`` when defined."""
    out = []
    s1, s2 = point_symmetry(sc.x1, sc.p3), point_symmetry(sc.x2, sc.p3)
    for name, a, b in (("L0", sc.x2, sc.x1), ("L1", s1, s2), ("L2", sc.p1, sc.p2)):
        if not np.array_equal(a, b):
            out.append((name, a, b - a))
    return out


def emit_figure(spec: FigureSpec) -> str:
    sc = spec.scenario
    plane = Plane(sc.extras.get("norm", "lp:2"))
    n = int(spec.density)

    circles = [("C", plane.circle_points(n))]
    if sc.lam > 0.0:
        circles.append(("C(x1)", plane.circle_points(n, sc.x1, sc.lam)))
        circles.append(("C(x2)", plane.circle_points(n, sc.x2, sc.lam)))
    names = MAIN_POINTS + AUX_POINTS
    pts = {name: getattr(sc, name) for name in names}

    world = np.vstack([c for _, c in circles] + [np.array(list(pts.values()))])
    lo, hi = world.min(axis=0), world.max(axis=0)
    pad = 0.1 * np.maximum(hi - lo, 1e-9)
    box = (lo[0] - pad[0], lo[1] - pad[1], hi[0] + pad[0], hi[1] + pad[1])

    vx, vy = box[0] * SCALE, -box[3] * SCALE
    vw, vh = (box[2] - box[0]) * SCALE, (box[3] - box[1]) * SCALE
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}" '
        f'width="{_f(vw)}" height="{_f(vh)}">',
        '<g class="circles" fill="none" stroke="#444" stroke-width="0.8">',
    ]
    for name, c in circles:
        s = _screen(np.vstack([c, c[:1]]))
        d = "M " + " L ".join(f"{_f(x)},{_f(y)}" for x, y in s)
        out.append(f'<path class="circle" data-name="{name}" d="{d}"/>')
    out.append("</g>")

    out.append('<g class="lines" stroke="#1f5fa8" stroke-width="0.8">')
    for name, a, d in scene_lines(sc):
        seg = _clip_line(a, d, box)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = _screen(np.array(seg))
        out.append(f'<line class="line" data-name="{name}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
    out.append("</g>")

    out.append('<g class="points" font-family="serif" font-size="10">')
    for name in names:
        (x, y), = _screen(pts[name])
        cls = "point" if name in MAIN_POINTS else "aux-point"
        fill = "#000" if cls == "point" else "#888"
        out.append(f'<circle class="{cls}" data-name="{name}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(MARKER_R)}" fill="{fill}"/>')
        if spec.labels:
            out.append(f'<text class="label" x="{_f(x + 3.0)}" y="{_f(y - 3.0)}">{name}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def lines_parallel(sc: OrthoScenario, tol: float = 1e-9) -> bool:
    ds = [d for _, _, d in scene_lines(sc)]
    return all(abs(cross(ds[0], d)) <= tol * np.hypot(*ds[0]) * np.hypot(*d) for d in ds[1:])
