import json
import math
import pathlib

import numpy as np
import pytest
from conftest import HEXAGON, NORMS, TWO_PI, approx_pt

from minkplane.bisectors import AngleSpec, dual_glogovskij_defect, glogovskij_defect
from minkplane.numerics import ConstructionError, first_root
from minkplane.orthogonality import isosceles_defect
from minkplane.plane import Line, Plane, dist_point_line
from minkplane.scenarios import (
    IsoPair,
    ScenarioKind,
    ThetaBasis,
    build_scenario,
    busemann_gap,
    family_x3,
    iso_seed,
    median_line_distance,
    phi,
    separation_check,
)
from minkplane.systems import identity_defects
from minkplane.verify import radius_relations

FIX = json.loads((pathlib.Path(__file__).parent / "fixtures" / "derived.json").read_text())


def seeds(plane, n, rng):
    for th, lr in zip(rng.uniform(0, TWO_PI, n), rng.uniform(math.log(0.5), math.log(2.0), n)):
        yield iso_seed(plane, th, math.exp(lr))


class TestIsoSeed:
    def test_examples(self):
        p = iso_seed(Plane("lp:2"), 0.0, 1.0)
        assert approx_pt(p.x, (1, 0)) and approx_pt(p.z, (0, 1)) and p.lam == pytest.approx(math.sqrt(2))
        p = iso_seed(Plane("lp:inf"), math.pi / 4, 1.0)
        assert approx_pt(p.x, (1, 1)) and p.lam == pytest.approx(2.0)
        assert approx_pt(p.z, (1, -1)) or approx_pt(p.z, (-1, 1))
        p = iso_seed(Plane("lp:1"), 0.0, 2.0)
        assert approx_pt(p.x, (1, 0)) and approx_pt(p.z, (0, 2)) and p.lam == pytest.approx(3.0)

    def test_invariants(self, plane, rng):
        for pair in seeds(plane, 100, rng):
            assert abs(isosceles_defect(plane, pair.x, pair.z)) <= 1e-9
            assert plane.norm(pair.z) <= pair.lam + 1e-12

    def test_rejects(self):
        pl = Plane("lp:2")
        with pytest.raises(ValueError):
            iso_seed(pl, 0.0, 0.0)
        with pytest.raises(ValueError):
            IsoPair.make(pl, (1, 0), (1, 1))


class TestFamily:
    def test_endpoints_l2(self):
        pl = Plane("lp:2")
        pair = IsoPair.make(pl, (1, 0), (0, 1))
        x3, q, p1, p2 = family_x3(pl, pair, 0.0)
        assert approx_pt(x3, (-1, 2)) and approx_pt(q, (-0.5, 0.5))
        assert approx_pt(p1, (-2, 1)) and approx_pt(p2, (0, 1))
        x3, q, p1, p2 = family_x3(pl, pair, 1.0)
        assert approx_pt(x3, (1, 2)) and approx_pt(q, (0.5, 0.5))
        assert approx_pt(p1, (0, 1)) and approx_pt(p2, (2, 1))

    def test_limits_and_radius(self, plane, rng):
        for pair in seeds(plane, 30, rng):
            for t in (1e-12, 1 - 1e-12):
                x3 = family_x3(plane, pair, t)[0]
                end = 2 * pair.z - pair.x if t < 0.5 else 2 * pair.z + pair.x
                assert approx_pt(x3, end, 1e-9)
            for t in rng.uniform(0, 1, 10):
                x3, q, _, _ = family_x3(plane, pair, t)
                assert abs(plane.norm(q) - pair.lam / 2) <= 1e-9
                assert abs(plane.norm(x3 - pair.z) - pair.lam) <= 1e-9

    def test_far_side(self, plane, rng):
        # x3(t) stays on the side of the chord [2z - x, 2z + x] away from p3 = -z
        for pair in seeds(plane, 20, rng):
            basis = ThetaBasis(plane, pair)
            for t in np.linspace(0.01, 0.99, 25):
                b3 = basis.coords(family_x3(plane, pair, t)[0])[1]
                assert b3 >= 2 * basis.nz - 1e-9

    def test_range(self):
        pl = Plane("lp:2")
        with pytest.raises(ValueError):
            family_x3(pl, iso_seed(pl, 0, 1), 1.5)


class TestBuildScenario:
    def test_median_l2(self):
        pl = Plane("lp:2")
        sc = build_scenario(pl, IsoPair.make(pl, (1, 0), (0, 1)), "median")
        r2 = math.sqrt(2)
        assert approx_pt(sc.p1, (-1, r2)) and approx_pt(sc.p2, (1, r2))
        assert approx_pt(sc.p3, (0, -1)) and approx_pt(sc.p4, (0, 1))
        assert median_line_distance(pl, sc) <= 1e-12

    def test_support_l2(self):
        pl = Plane("lp:2")
        sc = build_scenario(pl, IsoPair.make(pl, (1, 0), (0, 1)), "support")
        assert approx_pt(sc.q, (0, math.sqrt(2) / 2))
        assert approx_pt(sc.p1, (-1, math.sqrt(2)))
        line = Line(sc.p1, sc.p2 - sc.p1)
        assert dist_point_line(pl, sc.x1, line) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_dual_glogovskij_l4_fixture(self):
        pl = Plane("lp:4")
        pair = iso_seed(pl, 0.3, 1.0)
        assert phi(pl, pair, 1e-6) > 0 > phi(pl, pair, 1 - 1e-6)
        sc = build_scenario(pl, pair, "dual_glogovskij")
        t0 = sc.extras["t0"]
        assert 0 < t0 < 1 and abs(phi(pl, pair, t0)) <= 1e-9
        assert t0 == pytest.approx(FIX["l4_dual_glogovskij_t0_theta03_r1"], abs=1e-10)

    @pytest.mark.parametrize("kind", [k.value for k in ScenarioKind])
    def test_kinds_all_norms(self, kind, rng):
        for norm in NORMS:
            pl = Plane(norm)
            for pair in seeds(pl, 8, rng):
                sc = build_scenario(pl, pair, kind)
                assert sc.extras["kind"] == kind
                assert radius_relations(pl, sc) <= 1e-9
                assert max(identity_defects(sc).values()) <= 1e-12
                ang = AngleSpec(sc.p3, sc.p1, sc.p2)
                if kind == "median":
                    assert median_line_distance(pl, sc) <= 1e-12 * max(1, sc.lam) * 10
                elif kind == "support":
                    line = Line(sc.p1, sc.p2 - sc.p1)
                    for x in (sc.x1, sc.x2):
                        assert abs(dist_point_line(pl, x, line) - sc.lam) <= 1e-8
                elif kind == "isodist":
                    assert abs(pl.norm(sc.p3 - sc.p1) - pl.norm(sc.p3 - sc.p2)) <= 1e-9
                elif kind == "busemann":
                    assert abs(busemann_gap(pl, sc)) <= 1e-9
                elif kind == "glogovskij":
                    assert abs(glogovskij_defect(pl, ang, sc.p4)) <= 1e-9
                else:
                    assert abs(dual_glogovskij_defect(pl, ang, sc.p4)) <= 1e-9
                if kind not in ("median", "support"):
                    assert 0 < sc.extras["t0"] < 1

    def test_unknown_kind(self):
        pl = Plane("lp:2")
        with pytest.raises(ValueError):
            build_scenario(pl, iso_seed(pl, 0, 1), "nope")

    def test_failed_bracket(self):
        with pytest.raises(ConstructionError, match="construction failed") as info:
            first_root(lambda t: 1.0 + t, 0.0, 1.0)
        assert info.value.values == {"f_lo": 1.0, "f_hi": 2.0}


class TestPhi:
    def test_open_interval(self):
        pl = Plane("lp:2")
        with pytest.raises(ValueError):
            phi(pl, iso_seed(pl, 0, 1), 0.0)

    def test_euclidean_midpoint(self):
        pl = Plane("lp:2")
        assert abs(phi(pl, IsoPair.make(pl, (1, 0), (0, 1)), 0.5)) <= 1e-12

    @pytest.mark.parametrize("norm", ["lp:2", "lp:4", HEXAGON])
    def test_endpoint_limits(self, norm, rng):
        pl = Plane(norm)
        for pair in seeds(pl, 20, rng):
            basis = ThetaBasis(pl, pair)
            nx, nz = basis.nx, basis.nz
            # t -> 0: x3 -> 2z - x, where a3 = -||x|| and f_p2 = (-2||z||, 0) in the basis
            f2 = basis.functional_to_std((-2 * nz, 0.0))
            assert phi(pl, pair, 1e-9) == pytest.approx(2 * pl.dual_norm(f2) * nz * nx, rel=1e-6)
            f1 = basis.functional_to_std((-2 * nz, 0.0))
            assert phi(pl, pair, 1 - 1e-9) == pytest.approx(-2 * pl.dual_norm(f1) * nz * nx, rel=1e-6)

    def test_sign_matches_dual_defect(self, plane, rng):
        for pair in seeds(plane, 10, rng):
            for t in np.linspace(0.02, 0.98, 13):
                _, _, p1, p2 = family_x3(plane, pair, t)
                d = dual_glogovskij_defect(plane, AngleSpec(-pair.z, p1, p2), pair.z)
                f = phi(plane, pair, t)
                if abs(d) > 1e-9:
                    assert np.sign(f) == np.sign(d)


class TestSeparation:
    def test_examples(self):
        pl = Plane("lp:2")
        assert separation_check(pl, build_scenario(pl, IsoPair.make(pl, (1, 0), (0, 1)), "median")) == "separated"
        pl = Plane("lp:1")
        pair = IsoPair.make(pl, (1, 0), (0, 1))
        assert pair.lam == 2.0
        assert separation_check(pl, build_scenario(pl, pair, "median")) == "separated"
        pl = Plane("lp:inf")
        pair = IsoPair.make(pl, (1, 0), (0, 1))
        assert separation_check(pl, build_scenario(pl, pair, "median")) == "coincident"

    def test_not_seeded(self):
        from minkplane.systems import build_system

        with pytest.raises(ValueError):
            separation_check(Plane("lp:2"), build_system((1, 0), (-1, 0), (0, 1), (0.2, 0.2)))

    def test_median_rule(self, plane, rng):
        for pair in seeds(plane, 100, rng):
            sc = build_scenario(plane, pair, "median")
            verdict = separation_check(plane, sc)
            ratio = pair.lam / plane.norm(pair.z)
            if abs(pair.lam - plane.norm(pair.z)) <= 1e-9:
                assert verdict == "coincident"
            elif ratio > 1 + 1e-9:
                assert verdict == "separated"
