"""Self-check suites run by ``minkplane check``."""

from __future__ import annotations

import math

import numpy as np

from .numerics import ConstructionError
from .orthogonality import Chord, chordal_check, chordal_partner
from .plane import UNIT_CIRCLE, Line, Plane, dist_point_line
from .scenarios import build_scenario, family_x3, iso_seed
from .systems import build_system, identity_defects_batch, system_arrays

SUITES = ("theorem21", "lemma22", "kernel")

AFFINE_TOL = 1e-12
RADIUS_TOL = 1e-9
ORACLE_TOL = 1e-8
CHORDAL_TOL = 1e-9


def random_systems(rng, n: int) -> dict:
    """``n`` random systems with triangle sides longer than 1e-3."""
    pts = rng.uniform(-2.0, 2.0, size=(4, n, 2))
    x1, x2, x3, p4 = pts
    short = np.minimum(np.minimum(np.hypot(*(x1 - x2).T), np.hypot(*(x1 - x3).T)), np.hypot(*(x2 - x3).T)) <= 1e-3
    x3[short] += 1.0  # measure-zero event, any shift works
    return system_arrays(x1, x2, x3, p4)


def theorem21_suite(plane: Plane, n: int = 1000, seed: int = 0) -> dict:
    """The four affine identities on random systems (the norm plays no role)."""
    rng = np.random.default_rng(seed)
    worst = identity_defects_batch(random_systems(rng, n))
    # inscribed triangle with p4 = O: the C-orthocenter is x1 + x2 + x3
    inscribed = 0.0
    for _ in range(n // 10 or 1):
        a, b, c = (plane.unit_point(t) for t in rng.uniform(0.0, 2.0 * math.pi, size=3))
        sc = build_system(a, b, c, (0.0, 0.0))
        inscribed = max(inscribed, float(np.max(np.abs(sc.x4 - (a + b + c)))))
    worst["inscribed"] = inscribed
    return {"suite": "theorem21", "cases": n, "max_error": worst,
            "passed": all(v <= AFFINE_TOL for v in worst.values())}


def radius_relations(plane: Plane, sc) -> float:
    """Largest deviation from ``lambda`` of the seven circumradius relations."""
    pairs = ((sc.x2, sc.p1), (sc.x2, sc.p3), (sc.x2, sc.p4),
             (sc.x1, sc.p2), (sc.x1, sc.p3), (sc.x1, sc.p4), (sc.p3, sc.x4))
    return max(abs(plane.norm(a - b) - sc.lam) for a, b in pairs)


def lemma22_suite(plane: Plane, n: int = 500, seed: int = 0) -> dict:
    """Radius relations on seeded scenarios (median, support and a random point of the arc family)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    bound = -math.inf
    for i in range(n):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        r = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
        pair = iso_seed(plane, theta, r)
        bound = max(bound, plane.norm(pair.z) - pair.lam)
        kind = ("median", "support", "family")[i % 3]
        if kind == "family":
            x3 = family_x3(plane, pair, float(rng.uniform(0.0, 1.0)))[0]
            sc = build_system(pair.x, -pair.x, x3, pair.z)
            sc.lam = pair.lam
        else:
            sc = build_scenario(plane, pair, kind)
        worst = max(worst, radius_relations(plane, sc) / max(1.0, sc.lam))
    return {"suite": "lemma22", "cases": n, "max_radius_error": worst,
            "max_z_minus_lambda": bound,
            "passed": worst <= RADIUS_TOL and bound <= 1e-12}


def kernel_suite(plane: Plane, n: int = 1000, seed: int = 0) -> dict:
    """Functional distance against direct minimisation, support-line distances and chordal partners."""
    rng = np.random.default_rng(seed)
    dist_err = 0.0
    for _ in range(n):
        x, b, d = rng.uniform(-2.0, 2.0, size=(3, 2))
        if np.hypot(*d) < 1e-6:
            continue
        line = Line(b, d)
        f = dist_point_line(plane, x, line)
        s = dist_point_line(plane, x, line, method="search")
        dist_err = max(dist_err, abs(f - s))
    support_err = 0.0
    for _ in range(n // 10 or 1):
        pair = iso_seed(plane, rng.uniform(0.0, 2.0 * math.pi), math.exp(rng.uniform(math.log(0.5), math.log(2.0))))
        sc = build_scenario(plane, pair, "support")
        line = Line(sc.p1, sc.p2 - sc.p1)
        support_err = max(support_err, *(abs(dist_point_line(plane, x, line) - sc.lam) for x in (sc.x1, sc.x2)))
    chordal_err = 0.0
    chordal_cases = n // 5 or 1
    for _ in range(chordal_cases):
        a, b, c = rng.uniform(0.0, 2.0 * math.pi, size=3)
        p1, q1, p2 = plane.unit_point(a), plane.unit_point(b), plane.unit_point(c)
        if np.allclose(p1, q1):
            continue
        c1 = Chord(UNIT_CIRCLE, p1, q1)
        try:
            c2 = chordal_partner(plane, c1, p2)
        except ConstructionError:
            chordal_err = math.inf
            continue
        chordal_err = max(chordal_err, chordal_check(plane, c1, c2))
    return {"suite": "kernel", "cases": n, "max_distance_gap": dist_err,
            "max_support_gap": support_err, "max_chordal_defect": chordal_err,
            "passed": dist_err <= ORACLE_TOL and support_err <= ORACLE_TOL and chordal_err <= CHORDAL_TOL}


def run_suite(name: str, plane: Plane, seed: int = 0) -> dict:
    fn = {"theorem21": theorem21_suite, "lemma22": lemma22_suite, "kernel": kernel_suite}.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}")
    out = fn(plane, seed=seed)
    out["norm"] = str(plane.spec)
    return out
