"""Sampled defect probes for the euclidianity characterizations.

Each probe has three parts: ``construct`` draws a configuration that satisfies
the hypothesis (returned as a JSON-ready payload), ``check`` re-verifies the
hypothesis on that payload, and ``measure`` evaluates the normalized
conclusion defect from the payload alone.  Because ``measure`` only reads the
payload, a serialized witness reproduces its defect bit for bit.

Sub-seeds: sample ``i`` of probe ``k`` draws from
``np.random.default_rng(np.random.SeedSequence([seed, k, i]))`` where ``k`` is
the position of the probe in :data:`PROBE_IDS`.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bisectors import AngleSpec, dual_glogovskij_defect
from .numerics import ConstructionError
from .orthogonality import (
    Chord,
    birkhoff_defect,
    birkhoff_partner,
    chordal_check,
    chordal_partner,
    isosceles_defect,
    isosceles_partner,
)
from .plane import (
    UNIT_CIRCLE,
    Functional,
    Line,
    Plane,
    Segment,
    as_point,
    cross,
    dist_point_line,
    dist_point_segment,
    intersect_line_circle,
)
from .scenarios import busemann_gap, build_scenario, iso_seed, median_line_distance
from .systems import OrthoScenario

REPORT_VERSION = "1"
PROBE_IDS = ("L1", "L2", "L3", "L4", "T31", "T32", "T33", "T34", "T35", "T36", "T37", "T38", "T39")

L1_GRID = 33
L4_CHORDS = 17
R_RANGE = (0.5, 2.0)

_FAILURES = (ConstructionError, ValueError, ArithmeticError)


@dataclass(frozen=True)
class ProbeConfig:
    norm: str
    id: str
    samples: int
    seed: int
    tol: float = 1e-9

    def __post_init__(self):
        if self.id not in PROBE_IDS:
            raise ValueError(f"unknown probe id {self.id!r}")
        if int(self.samples) < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")


@dataclass
class ProbeReport:
    config: ProbeConfig
    dmax: float | None
    dmean: float | None
    p95: float | None
    failures: int
    witness: dict | None
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        c = self.config
        return {
            "version": REPORT_VERSION,
            "norm": c.norm,
            "id": c.id,
            "samples": int(c.samples),
            "seed": int(c.seed),
            "tol": float(c.tol),
            "defects": {"max": self.dmax, "mean": self.dmean, "p95": self.p95},
            "failures": int(self.failures),
            "witness": self.witness,
            "runtime_ms": self.runtime_ms,
        }


def _pt(v) -> list:
    return [float(v[0]), float(v[1])]


def _arr(v) -> np.ndarray:
    return as_point(v)


def sub_rng(seed: int, probe_index: int, sample_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(probe_index), int(sample_index)]))


def _draw_seed(rng) -> tuple[float, float]:
    theta = float(rng.uniform(0.0, 2.0 * math.pi))
    r = float(math.exp(rng.uniform(math.log(R_RANGE[0]), math.log(R_RANGE[1]))))
    return theta, r


def _sine(u, v) -> float:
    nu, nv = math.hypot(*u), math.hypot(*v)
    if nu < 1e-12 or nv < 1e-12:
        return 0.0
    return abs(cross(u, v)) / (nu * nv)


# ---------------------------------------------------------------------------
# orthogonality probes


def _iso_payload(plane, rng):
    x = plane.unit_point(float(rng.uniform(0.0, 2.0 * math.pi)))
    y = isosceles_partner(plane, x, 1.0)
    return {"x": _pt(x), "y": _pt(y)}


def _iso_check(plane, w, tol):
    return abs(isosceles_defect(plane, w["x"], w["y"])) <= tol


def _l1_measure(plane, w):
    x, y = _arr(w["x"]), _arr(w["y"])
    ts = np.linspace(0.5, 2.0, L1_GRID)
    return max(abs(isosceles_defect(plane, x, t * y)) / (1.0 + t) for t in ts)


def _l2_measure(plane, w):
    x, y = _arr(w["x"]), _arr(w["y"])
    return birkhoff_defect(plane, x, y) / plane.norm(x)


def _l3_construct(plane, rng):
    x = plane.unit_point(float(rng.uniform(0.0, 2.0 * math.pi)))
    y = birkhoff_partner(plane, x)[0]
    return {"x": _pt(x), "y": _pt(y)}


def _l3_check(plane, w, tol):
    return birkhoff_defect(plane, w["x"], w["y"]) <= tol


def _l3_measure(plane, w):
    x, y = _arr(w["x"]), _arr(w["y"])
    return abs(isosceles_defect(plane, x, y)) / plane.norm(x)


def _chord_endpoints(plane, line: Line):
    hit = intersect_line_circle(plane, line, UNIT_CIRCLE)
    if hit.kind not in ("points", "segment") or len(hit.points) < 2:
        raise ConstructionError("construction failed: chord line misses the unit circle")
    pts = sorted(zip(hit.params, hit.points), key=lambda pair: pair[0])
    return pts[0][1], pts[-1][1]


def _l4_construct(plane, rng):
    ang = float(rng.uniform(0.0, math.pi))
    d = np.array([math.cos(ang), math.sin(ang)])
    f = Functional.annihilating(d)
    fn = plane.dual_norm(f)
    n = f.vector / float(f.vector @ f.vector)
    chords = []
    for k in range(1, L4_CHORDS + 1):
        c = fn * (-1.0 + 2.0 * k / (L4_CHORDS + 1))
        a, b = _chord_endpoints(plane, Line(c * n, d))
        chords.append([_pt(a), _pt(b)])
    return {"direction": _pt(d), "chords": chords}


def _l4_check(plane, w, tol):
    d = _arr(w["direction"])
    for a, b in w["chords"]:
        a, b = _arr(a), _arr(b)
        if abs(plane.norm(a) - 1.0) > tol or abs(plane.norm(b) - 1.0) > tol:
            return False
        if _sine(b - a, d) > tol:
            return False
    return True


def _l4_measure(plane, w):
    mids = [(_arr(a) + _arr(b)) / 2.0 for a, b in w["chords"]]
    A, B = mids[0], mids[-1]
    ext = float((B - A) @ (B - A))
    if ext == 0.0:
        return 0.0
    return max(abs(cross(B - A, M - A)) / ext for M in mids[1:-1])


# ---------------------------------------------------------------------------
# scenario probes


def _scenario_constructor(kind: str):
    def construct(plane, rng):
        theta, r = _draw_seed(rng)
        return build_scenario(plane, iso_seed(plane, theta, r), kind).to_dict()

    return construct


def _sc(w) -> OrthoScenario:
    return OrthoScenario.from_dict(w)


def _support_line_gap(plane, sc) -> float:
    line = Line(sc.p1, sc.p2 - sc.p1)
    return max(abs(dist_point_line(plane, x, line) - sc.lam) for x in (sc.x1, sc.x2)) / sc.lam


def _dual_glog(plane, sc) -> float:
    return dual_glogovskij_defect(plane, AngleSpec(sc.p3, sc.p1, sc.p2), sc.p4)


def _check_support(plane, w, tol):
    return _support_line_gap(plane, _sc(w)) <= tol


def _check_isodist(plane, w, tol):
    sc = _sc(w)
    return abs(plane.norm(sc.p3 - sc.p1) - plane.norm(sc.p3 - sc.p2)) <= tol * sc.lam


def _check_median(plane, w, tol):
    sc = _sc(w)
    return median_line_distance(plane, sc) <= tol * sc.lam


def _check_busemann(plane, w, tol):
    return abs(busemann_gap(plane, _sc(w))) <= tol


def _check_dual_glog(plane, w, tol):
    sc = _sc(w)
    return abs(_dual_glog(plane, sc)) <= tol * sc.lam


def _m_isodist(plane, w):
    sc = _sc(w)
    return abs(plane.norm(sc.p3 - sc.p1) - plane.norm(sc.p3 - sc.p2)) / sc.lam


def _m_support_line(plane, w):
    return _support_line_gap(plane, _sc(w))


def _m_median_line(plane, w):
    sc = _sc(w)
    return median_line_distance(plane, sc) / sc.lam


def _m_busemann(plane, w):
    return abs(busemann_gap(plane, _sc(w)))


def _m_dual_glog(plane, w):
    sc = _sc(w)
    return abs(_dual_glog(plane, sc)) / sc.lam


# ---------------------------------------------------------------------------
# chordal probe


def _t39_construct(plane, rng):
    a, b, c = (float(v) for v in rng.uniform(0.0, 2.0 * math.pi, size=3))
    p1, q1, p2 = plane.unit_point(a), plane.unit_point(b), plane.unit_point(c)
    c1 = Chord(UNIT_CIRCLE, p1, q1)
    c2 = chordal_partner(plane, c1, p2)
    if not np.any(p1 + q1):
        raise ConstructionError("construction failed: chord passes through the origin")
    return {"p1": _pt(p1), "q1": _pt(q1), "p2": _pt(p2), "q2": _pt(c2.q)}


def _t39_check(plane, w, tol):
    c1 = Chord(UNIT_CIRCLE, w["p1"], w["q1"])
    q2 = _arr(w["q2"])
    p2 = _arr(w["p2"])
    if np.array_equal(p2, q2):
        return False
    return chordal_check(plane, c1, Chord(UNIT_CIRCLE, p2, q2)) <= tol


def _t39_measure(plane, w):
    p1, q1, p2, q2 = (_arr(w[k]) for k in ("p1", "q1", "p2", "q2"))
    h = p1 + q1 + p2
    hit = intersect_line_circle(plane, Line(p2, h - p2), UNIT_CIRCLE)
    near = 1e-9
    if hit.kind == "segment":
        # a flat piece through p2 is p2's own component; fall back to the whole set
        gap = dist_point_segment(plane, q2, Segment(hit.points[0], hit.points[-1], allow_degenerate=True))
    else:
        pts = [y for y in hit.points if plane.norm(y - p2) > near] or list(hit.points)
        gap = min(plane.norm(q2 - y) for y in pts) if pts else plane.norm(q2 - p2)
    residual = _sine((p1 + q1) / 2.0, (p2 - q2) / 2.0)
    return max(gap, residual)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Probe:
    id: str
    construct: Callable
    check: Callable
    measure: Callable
    note: str = ""


PROBES: dict[str, Probe] = {
    "L1": Probe("L1", _iso_payload, _iso_check, _l1_measure, "isosceles orthogonality is homogeneous"),
    "L2": Probe("L2", _iso_payload, _iso_check, _l2_measure, "isosceles implies Birkhoff"),
    "L3": Probe("L3", _l3_construct, _l3_check, _l3_measure, "Birkhoff implies isosceles"),
    "L4": Probe("L4", _l4_construct, _l4_check, _l4_measure, "midpoints of parallel chords are collinear"),
    "T31": Probe("T31", _scenario_constructor("support"), _check_support, _m_isodist),
    "T32": Probe("T32", _scenario_constructor("isodist"), _check_isodist, _m_support_line),
    "T33": Probe("T33", _scenario_constructor("median"), _check_median, _m_support_line),
    "T34": Probe("T34", _scenario_constructor("support"), _check_support, _m_median_line),
    "T35": Probe("T35", _scenario_constructor("median"), _check_median, _m_busemann),
    "T36": Probe("T36", _scenario_constructor("busemann"), _check_busemann, _m_median_line),
    "T37": Probe("T37", _scenario_constructor("median"), _check_median, _m_dual_glog),
    "T38": Probe("T38", _scenario_constructor("dual_glogovskij"), _check_dual_glog, _m_median_line),
    "T39": Probe("T39", _t39_construct, _t39_check, _t39_measure, "chordal C-orthocenter"),
}


def _stats(values: list[float]) -> tuple:
    if not values:
        return None, None, None
    arr = np.asarray(values)
    return float(arr.max()), float(arr.mean()), float(np.percentile(arr, 95))


def probe(plane: Plane, cfg: ProbeConfig, timing: bool = True) -> ProbeReport:
    """Run one probe; failed constructions and failed re-checks are counted, not measured."""
    pr = PROBES[cfg.id]
    k = PROBE_IDS.index(cfg.id)
    start = time.perf_counter()
    defects: list[float] = []
    failures = 0
    witness = None
    best = -1.0
    for i in range(int(cfg.samples)):
        rng = sub_rng(cfg.seed, k, i)
        try:
            payload = pr.construct(plane, rng)
            if not pr.check(plane, payload, cfg.tol):
                failures += 1
                continue
            d = float(pr.measure(plane, payload))
        except _FAILURES:
            failures += 1
            continue
        defects.append(d)
        if d > best:
            best = d
            witness = {"sample": i, "defect": d, "payload": payload}
    dmax, dmean, p95 = _stats(defects)
    runtime = (time.perf_counter() - start) * 1e3 if timing else None
    return ProbeReport(cfg, dmax, dmean, p95, failures, witness, runtime)


def run_battery(plane: Plane, samples: int, seed: int, tol: float = 1e-9, timing: bool = True) -> list[ProbeReport]:
    """All probes in the fixed order of :data:`PROBE_IDS`."""
    norm = str(plane.spec)
    return [probe(plane, ProbeConfig(norm, pid, samples, seed, tol), timing=timing) for pid in PROBE_IDS]


def reevaluate_witness(plane: Plane, report: dict) -> float:
    """Recompute the defect stored in a report's witness."""
    w = report["witness"]
    if w is None:
        raise ValueError("report has no witness")
    return float(PROBES[report["id"]].measure(plane, w["payload"]))


CSV_COLUMNS = ("id", "norm", "samples", "seed", "tol", "max", "mean", "p95", "failures", "runtime_ms")


def battery_csv(reports) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for rep in reports:
        d = rep.to_dict() if isinstance(rep, ProbeReport) else rep
        wr.writerow([d["id"], d["norm"], d["samples"], d["seed"], repr(d["tol"]),
                     *("" if d["defects"][k] is None else repr(d["defects"][k]) for k in ("max", "mean", "p95")),
                     d["failures"], "" if d["runtime_ms"] is None else repr(d["runtime_ms"])])
    return buf.getvalue()
