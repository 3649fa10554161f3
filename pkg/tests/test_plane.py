import math

import numpy as np
import pytest
from conftest import SQUARE, TWO_PI, approx_pt
from hypothesis import given, settings
from hypothesis import strategies as st

from minkplane.plane import (
    UNIT_CIRCLE,
    Circumference,
    Functional,
    Line,
    NormSpec,
    Plane,
    Ray,
    Segment,
    dist_point_line,
    dist_point_ray,
    dist_point_segment,
    homothety,
    intersect_line_circle,
    parse_norm,
    point_symmetry,
    regular_polygon,
    split_arcs,
    support_lines_at,
)

coord = st.floats(-5, 5, allow_nan=False)


class TestNormSpec:
    def test_parse_roundtrip(self):
        for text in ("lp:1", "lp:2.5", "lp:inf", SQUARE):
            spec = parse_norm(text)
            assert parse_norm(str(spec)) == spec

    @pytest.mark.parametrize("bad", ["lp:0.5", "lp:-1", "lp:nan", "ellipse:1", "polygon:1,0;0,1;-1,0",
                                     "polygon:1,0;0,1;-1,0;0,-2", "polygon:1,0;-1,0;0,1;0,-1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_norm(bad)

    def test_p_message(self):
        with pytest.raises(ValueError, match="p must be ≥ 1"):
            NormSpec.lp(0.5)

    def test_collinear_vertices_rejected(self):
        with pytest.raises(ValueError):
            NormSpec.polygon([(1, -1), (1, 0), (1, 1), (-1, 1), (-1, 0), (-1, -1)])


class TestNorms:
    def test_examples(self):
        assert Plane("lp:1").norm((3, -4)) == 7.0
        assert Plane("lp:inf").norm((3, -4)) == 4.0
        assert Plane(SQUARE).norm((3, -4)) == pytest.approx(4.0, abs=1e-15)
        assert Plane("lp:1").dual_norm((3, -4)) == 4.0
        assert Plane("lp:2").dual_norm((3, 4)) == 5.0
        assert Plane(SQUARE).dual_norm((3, -4)) == pytest.approx(7.0, abs=1e-15)

    def test_unit_point_examples(self):
        assert approx_pt(Plane("lp:2").unit_point(0.0), (1, 0))
        assert approx_pt(Plane("lp:1").unit_point(math.pi / 2), (0, 1))
        assert approx_pt(Plane("lp:inf").unit_point(math.pi / 4), (1, 1))

    def test_unit_point_on_circle(self, plane):
        for th in np.linspace(0, TWO_PI, 720, endpoint=False):
            assert abs(plane.norm(plane.unit_point(th)) - 1.0) <= 1e-12

    def test_axioms(self, plane, rng):
        u = rng.normal(size=(1000, 2))
        v = rng.normal(size=(1000, 2))
        t = rng.normal(size=1000)
        for a, b, s in zip(u, v, t):
            assert plane.norm(a + b) <= plane.norm(a) + plane.norm(b) + 1e-9
            assert plane.norm(s * a) == pytest.approx(abs(s) * plane.norm(a), rel=1e-9, abs=1e-15)

    def test_dual_of_dual(self, plane, rng):
        dd = plane.dual.dual
        for v in rng.normal(size=(200, 2)):
            assert dd.norm(v) == pytest.approx(plane.norm(v), rel=1e-9)

    def test_dual_is_max_over_ball(self, plane, rng):
        circle = plane.circle_points(20000)
        for f in rng.normal(size=(20, 2)):
            brute = np.max(circle @ f)
            assert plane.dual_norm(f) >= brute - 1e-12
            assert plane.dual_norm(f) <= brute * (1 + 1e-3)

    def test_norms_vectorised(self, plane, rng):
        vs = rng.normal(size=(50, 2))
        assert np.allclose(plane.norms(vs), [plane.norm(v) for v in vs], rtol=1e-14)

    def test_regular_polygon_symmetric(self):
        spec = regular_polygon(8, 0.1)
        v = np.array(spec.vertices)
        assert np.allclose(v[4:], -v[:4])


class TestPrimitives:
    def test_functional(self):
        f = Functional.annihilating((1, 1))
        assert (f.a, f.b) == (1.0, -1.0)
        assert f((1, 1)) == 0.0
        assert Functional.annihilating((0, -2)).a == 2.0

    def test_degenerate(self):
        with pytest.raises(ValueError):
            Line((0, 0), (0, 0))
        with pytest.raises(ValueError):
            Segment((1, 1), (1, 1))
        with pytest.raises(ValueError):
            Circumference((0, 0), 0.0)
        with pytest.raises(ValueError):
            Functional.annihilating((0, 0))
        Segment((1, 1), (1, 1), allow_degenerate=True)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            Line((math.nan, 0), (1, 0))

    def test_symmetry_homothety(self):
        assert approx_pt(point_symmetry((1, 1), (0, 0)), (2, 2))
        assert approx_pt(homothety((0, 0), -2.0, (1, 0)), (-2, 0))

    @given(coord, coord, coord, coord)
    def test_symmetry_involution(self, a, b, c, d):
        p, w = (a, b), (c, d)
        assert approx_pt(point_symmetry(p, point_symmetry(p, w)), w, 1e-12)


class TestDistances:
    def test_line_examples(self):
        assert dist_point_line(Plane("lp:2"), (0, 1), Line((0, 0), (1, 0))) == 1.0
        assert dist_point_line(Plane("lp:inf"), (1, 0), Line((0, 0), (1, 1))) == pytest.approx(0.5, abs=1e-15)
        assert dist_point_line(Plane("lp:1"), (1, 1), Line((0, 0), (1, 0))) == 1.0

    def test_ray_examples(self):
        ray = Ray((0, 0), (1, 0))
        assert dist_point_ray(Plane("lp:2"), (-1, 1), ray) == pytest.approx(math.sqrt(2), abs=1e-12)
        assert dist_point_ray(Plane("lp:2"), (1, 1), ray) == pytest.approx(1.0, abs=1e-12)
        assert dist_point_ray(Plane("lp:inf"), (2, 1), ray) == pytest.approx(1.0, abs=1e-12)

    def test_functional_vs_search(self, plane, rng):
        for x, b, d in rng.uniform(-2, 2, size=(300, 3, 2)):
            line = Line(b, d)
            assert dist_point_line(plane, x, line) == pytest.approx(
                dist_point_line(plane, x, line, method="search"), abs=1e-8)

    def test_ray_vs_line(self, plane, rng):
        for x, b, d in rng.uniform(-2, 2, size=(200, 3, 2)):
            ray = Ray(b, d)
            dl = dist_point_line(plane, x, ray.line)
            dr = dist_point_ray(plane, x, ray)
            assert dr >= dl - 1e-12
            t_star, _ = plane.section_min(np.asarray(x) - b, -d)
            if t_star > 1e-6:
                assert dr == pytest.approx(dl, abs=1e-9)

    def test_segment(self):
        pl = Plane("lp:2")
        seg = Segment((0, 0), (1, 0))
        assert dist_point_segment(pl, (2, 0), seg) == pytest.approx(1.0, abs=1e-12)
        assert dist_point_segment(pl, (0.5, 2), seg) == pytest.approx(2.0, abs=1e-12)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            dist_point_line(Plane("lp:2"), (0, 0), Line((0, 1), (1, 0)), method="nope")


class TestSupport:
    def test_examples(self):
        l1, l2 = support_lines_at(Plane("lp:2"), UNIT_CIRCLE, (0, 1))
        assert abs(l1.direction[1]) < 1e-12 and abs(l2.direction[1]) < 1e-12
        l1, l2 = support_lines_at(Plane("lp:inf"), UNIT_CIRCLE, (1, 0))
        assert abs(l1.direction[0]) < 1e-12 and abs(l2.direction[0]) < 1e-12
        l1, l2 = support_lines_at(Plane("lp:inf"), UNIT_CIRCLE, (1, 1))
        dirs = sorted([tuple(np.sign(np.round(l.direction, 12))) for l in (l1, l2)])
        assert dirs == [(-1.0, 0.0), (0.0, 1.0)]

    def test_not_boundary(self):
        with pytest.raises(ValueError, match="not a boundary point"):
            support_lines_at(Plane("lp:2"), UNIT_CIRCLE, (0.5, 0))

    def test_support_distance(self, plane, rng):
        circ = Circumference((0.3, -0.2), 1.7)
        for th in rng.uniform(0, TWO_PI, 100):
            e = circ.center + circ.radius * plane.unit_point(th)
            for line in support_lines_at(plane, circ, e):
                assert dist_point_line(plane, circ.center, line) == pytest.approx(circ.radius, abs=1e-9)

    @pytest.mark.parametrize("p", [1.5, 3.0, 4.0])
    def test_smooth_extremes_coincide(self, p, rng):
        pl = Plane(f"lp:{p}")
        for th in rng.uniform(0, TWO_PI, 50):
            a, b = support_lines_at(pl, UNIT_CIRCLE, pl.unit_point(th))
            assert approx_pt(a.direction, b.direction)


class TestIntersections:
    def test_examples(self):
        hit = intersect_line_circle(Plane("lp:2"), Line((0, 0), (1, 0)), UNIT_CIRCLE)
        assert hit.kind == "points"
        assert sorted(tuple(np.round(p, 12)) for p in hit.points) == [(-1.0, 0.0), (1.0, 0.0)]
        hit = intersect_line_circle(Plane("lp:inf"), Line((0, 1), (1, 0)), UNIT_CIRCLE)
        assert hit.kind == "segment"
        assert sorted(tuple(np.round(p, 12)) for p in hit.points) == [(-1.0, 1.0), (1.0, 1.0)]
        hit = intersect_line_circle(Plane("lp:1"), Line((1, 0), (1, -1)), UNIT_CIRCLE)
        assert hit.kind == "segment"
        assert sorted(tuple(np.round(p, 12)) for p in hit.points) == [(0.0, 1.0), (1.0, 0.0)]

    def test_miss_and_tangent(self):
        pl = Plane("lp:2")
        assert intersect_line_circle(pl, Line((0, 2), (1, 0)), UNIT_CIRCLE).kind == "empty"
        assert intersect_line_circle(pl, Line((0, 1), (1, 0)), UNIT_CIRCLE).kind == "point"

    def test_hits_on_circle(self, plane, rng):
        for b, d in rng.uniform(-0.7, 0.7, size=(100, 2, 2)):
            hit = intersect_line_circle(plane, Line(b, d), UNIT_CIRCLE)
            assert hit.kind in ("points", "segment")
            for p in hit.points:
                assert abs(plane.norm(p) - 1.0) <= 1e-9


class TestArcs:
    def test_examples(self):
        pl = Plane("lp:2")
        plus, minus = split_arcs(pl, UNIT_CIRCLE, (1, 0), (-1, 0))
        assert plus.contains((0, 1)) and minus.contains((0, -1))
        assert not plus.contains((0, -1))
        plus, _ = split_arcs(pl, UNIT_CIRCLE, (0, 1), (0, -1))
        assert plus.contains((-1, 0))

    def test_flat(self):
        plus, minus = split_arcs(Plane("lp:inf"), UNIT_CIRCLE, (1, 1), (-1, 1))
        assert plus.flat
        assert plus.contains((0, 1)) and not plus.contains((0, -1))
        assert minus.contains((0, -1))

    def test_equal_endpoints(self):
        with pytest.raises(ValueError):
            split_arcs(Plane("lp:2"), UNIT_CIRCLE, (1, 0), (1, 0))

    def test_partition(self, plane, rng):
        for a, b in rng.uniform(0, TWO_PI, size=(10, 2)):
            v, w = plane.unit_point(a), plane.unit_point(b)
            if plane.norm(v - w) < 1e-6:
                continue
            plus, minus = split_arcs(plane, UNIT_CIRCLE, v, w)
            for th in np.linspace(0, TWO_PI, 90, endpoint=False):
                y = plane.unit_point(th)
                ends = plane.norm(y - v) < 1e-9 or plane.norm(y - w) < 1e-9
                inside = plus.contains(y) + minus.contains(y)
                assert inside == (2 if ends else 1)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, TWO_PI), st.floats(0.1, 3.0))
    def test_plus_is_counterclockwise(self, a, span):
        pl = Plane("lp:2")
        v, w = pl.unit_point(a), pl.unit_point(a + span)
        plus, _ = split_arcs(pl, UNIT_CIRCLE, v, w)
        assert plus.contains(pl.unit_point(a + span / 2))
