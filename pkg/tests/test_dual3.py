import random
from fractions import Fraction

import pytest

from incidencelab.exact import Vec2, Vec3
from incidencelab.dual3 import (
    DualPoint3,
    Line3,
    PowerPlane,
    circle_dual,
    dp_dual_line,
    dual_incidence,
    dual_on_plane,
    encode_power,
    line_in_plane,
    plane_to_power,
    rich_planes,
    rich_planes_to_json,
)
from incidencelab.tangency import Circle2, DirectedPoint, Line2, is_tangent, power


def dp(px, py, u):
    return DirectedPoint(Vec2(px, py), u)


def circ(cx, cy, r2):
    return Circle2(Vec2(cx, cy), r2)


def rand_rat(rng, mag=10, den=10):
    d = rng.randint(1, den)
    return Fraction(rng.randint(-mag * d, mag * d), d)


class TestCircleDual:
    def test_examples(self):
        assert circle_dual(circ(0, 0, 1)) == DualPoint3(0, 0, 1)
        assert circle_dual(circ(0, 5, 25)) == DualPoint3(0, 5, 0)
        assert circle_dual(circ(3, 4, 25)) == DualPoint3(3, 4, 0)


class TestDualLine:
    def test_eta_axis(self):
        line = dp_dual_line(dp(0, 0, 0))
        assert line.nonvertical_plane() == PowerPlane(0, 0, 0)
        assert line.vertical_trace() == Line2(1, 0, 0)
        l3 = line.as_line3()
        assert l3.point == Vec3(0, 0, 0)
        assert l3.direction == Vec3(0, 1, 0)

    def test_shifted_line(self):
        line = dp_dual_line(dp(1, 0, 0))
        assert line.nonvertical_plane() == PowerPlane(2, 0, -1)
        assert line.vertical_trace() == Line2(1, 0, -1)
        assert line.as_line3().contains(Vec3(1, 7, -1))
        assert not line.as_line3().contains(Vec3(1, 7, 0))

    def test_distinct_points_distinct_lines(self):
        rng = random.Random(21)
        for _ in range(2000):
            a = dp(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            b = dp(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            if a == b:
                continue
            la, lb = dp_dual_line(a).as_line3(), dp_dual_line(b).as_line3()
            assert la != lb


class TestDualIncidence:
    def test_examples(self):
        assert dual_incidence(dp(0, 0, 0), circ(0, 5, 25))
        assert dual_incidence(dp(0, 1, 0), circ(0, 0, 1))
        assert not dual_incidence(dp(0, 1, 1), circ(0, 0, 1))

    def test_master_equivalence_sample(self):
        rng = random.Random(22)
        for _ in range(2000):
            a = dp(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            w = Vec2(rand_rat(rng), rand_rat(rng))
            p = Vec2(rand_rat(rng), rand_rat(rng))
            if p == w:
                continue
            c = Circle2(w, (p - w).norm2())
            assert dual_incidence(a, c) == is_tangent(a, c)


class TestPowerPlane:
    def test_decode_examples(self):
        pp = plane_to_power(0, 0, 0)
        assert pp.w == Vec2(0, 0) and pp.rho == 0
        assert dual_on_plane(circ(0, 5, 25), pp)

        pp1 = plane_to_power(0, 0, 1)
        assert pp1.w == Vec2(0, 0) and pp1.rho == 1
        assert power(Vec2(0, 0), circ(2, 0, 3)) == 1
        assert dual_on_plane(circ(2, 0, 3), pp1)

        assert not dual_on_plane(circ(0, 0, 1), plane_to_power(0, 0, 0))

    def test_power_equivalence_random(self):
        rng = random.Random(23)
        for _ in range(2000):
            c = None
            w = Vec2(rand_rat(rng), rand_rat(rng))
            p = Vec2(rand_rat(rng), rand_rat(rng))
            if p == w:
                continue
            c = Circle2(w, (p - w).norm2())
            pp = plane_to_power(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            assert dual_on_plane(c, pp) == (power(pp.w, c) == pp.rho)

    def test_encode_round_trip(self):
        rng = random.Random(24)
        for _ in range(500):
            a, b, d = rand_rat(rng), rand_rat(rng), rand_rat(rng)
            pp = plane_to_power(a, b, d)
            again = encode_power(pp.w, pp.rho)
            assert again == pp


class TestLineInPlane:
    def test_examples(self):
        zminus1 = plane_to_power(0, 0, 1)  # zeta = -1: w=(0,0), rho=1
        assert line_in_plane(dp(1, 0, 0), zminus1)
        assert not line_in_plane(dp(1, 0, 1), zminus1)
        assert not line_in_plane(dp(2, 0, 0), zminus1)

    def test_geometric_characterization(self):
        rng = random.Random(25)
        for _ in range(2000):
            a = dp(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            pp = plane_to_power(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            if pp.rho <= 0:
                continue
            w = pp.w
            geometric = (a.p - w).norm2() == pp.rho and (
                (w.y - a.p.y) == a.u * (w.x - a.p.x)
            )
            assert line_in_plane(a, pp) == geometric

    def test_direct_containment_of_line_points(self):
        rng = random.Random(26)
        hits = 0
        for _ in range(500):
            a = dp(rand_rat(rng), rand_rat(rng), rand_rat(rng))
            pp = encode_power(a.p + Vec2(1, a.u), (Vec2(1, a.u)).norm2())
            # w = p + (1, u): on the tangent-perpendicular? (w-p) = (1,u) is
            # parallel to (1,u): contained
            if not line_in_plane(a, pp):
                continue
            hits += 1
            line = dp_dual_line(a)
            p0 = line.point0()
            dv = line.direction()
            for k in (-3, 0, 2):
                pt = p0 + dv.scale(k)
                assert pp.eval_at(DualPoint3(pt.x, pt.y, pt.z)) == 0
        assert hits == 500


class TestRichPlanes:
    def test_power_circle_pencil(self):
        # five directed points on the unit power circle with radial directions
        pts = []
        for x, y in ((Fraction(3, 5), Fraction(4, 5)),
                     (Fraction(-3, 5), Fraction(4, 5)),
                     (Fraction(5, 13), Fraction(12, 13)),
                     (Fraction(-5, 13), Fraction(12, 13)),
                     (Fraction(1), Fraction(0))):
            p = Vec2(x, y)
            if p.x == 0:
                continue
            pts.append(DirectedPoint(p, p.y / p.x))
        report = rich_planes(pts, 2)
        assert len(report) >= 1
        top_plane, members = report[0]
        assert isinstance(top_plane, PowerPlane)
        assert top_plane == PowerPlane(0, 0, 1)  # zeta = -1
        assert members == list(range(5))
        # every reported plane re-verified by direct containment
        for plane, ms in report:
            if isinstance(plane, PowerPlane):
                for i in ms:
                    assert line_in_plane(pts[i], plane)

    def test_generic_points_no_rich_planes(self):
        rng = random.Random(27)
        pts = [dp(rand_rat(rng), rand_rat(rng), rand_rat(rng)) for _ in range(12)]
        assert rich_planes(pts, 3) == []

    def test_two_line_span_reported(self):
        # two directed points on a common power circle with matching radial
        # directions span their plane at q=2
        p1 = Vec2(Fraction(3, 5), Fraction(4, 5))
        p2 = Vec2(Fraction(-3, 5), Fraction(4, 5))
        pts = [DirectedPoint(p1, p1.y / p1.x), DirectedPoint(p2, p2.y / p2.x)]
        report = rich_planes(pts, 2)
        planes = [pl for pl, _ in report if isinstance(pl, PowerPlane)]
        assert PowerPlane(0, 0, 1) in planes

    def test_vertical_plane_grouping(self):
        # directed points sharing a tangent-perpendicular trace share their
        # unique vertical plane
        pts = [dp(0, 0, 0), dp(0, 2, 0), dp(0, -5, 0)]
        report = rich_planes(pts, 3)
        vertical = [pl for pl, ms in report if isinstance(pl, Line2) and len(ms) == 3]
        assert vertical == [Line2(1, 0, 0)]

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            rich_planes([], 1)

    def test_json_shape(self):
        pts = [dp(0, 0, 0), dp(0, 2, 0)]
        out = rich_planes_to_json(rich_planes(pts, 2))
        for entry in out:
            assert set(entry) == {"plane", "members", "count"}


def test_line3_canonicalization():
    l1 = Line3(Vec3(1, 1, 0), Vec3(0, 2, 0))
    l2 = Line3(Vec3(1, 5, 0), Vec3(0, -1, 0))
    assert l1 == l2
    assert l1.contains(Vec3(1, -7, 0))
