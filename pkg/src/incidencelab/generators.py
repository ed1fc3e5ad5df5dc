"""Exact configuration generators with certified planted incidences.

Every kind is deterministic in its seed, and every planted incidence is
re-checked with the exact predicate before the instance ships.  Random
rationals are drawn as numerator/denominator pairs from configured bounds,
then canonicalized, which keeps bit growth under control downstream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .anchored import (
    AnchoredCircle,
    anchored_incident,
    anchored_pair_intersections,
    anchored_point_sample,
    h_p_sample,
    sphere_point,
    tangent_basis,
)
from .dual3 import Line3
from .exact import Vec2, Vec3
from .polynomials import MPoly, resultant
from .tangency import Circle2, DirectedPoint, is_tangent, tangent_point_sample


class InfeasibleSpecError(Exception):
    pass


KINDS = (
    "random-tangency",
    "pencil",
    "circle-sampled",
    "st-grid-horizontal-lines",
    "anchored-random",
    "anchored-planted",
)


@dataclass
class GenSpec:
    kind: str
    m: int
    n: int
    seed: int = 0
    coord_range: int = 100
    den_bound: int = 100
    density: float = 0.05  # anchored-planted target pair fraction
    z_levels: int = 1      # st-grid plane replication

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InfeasibleSpecError(f"unknown generator kind {self.kind!r}")
        if self.m < 0 or self.n < 0:
            raise InfeasibleSpecError("m and n must be nonnegative")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "coord_range": self.coord_range,
            "den_bound": self.den_bound,
            "density": self.density,
            "z_levels": self.z_levels,
        }

    @staticmethod
    def from_json(obj: dict) -> "GenSpec":
        return GenSpec(**{k: obj[k] for k in obj})


@dataclass
class Instance:
    kind: str  # engine kind: tangency | anchored | lines3
    points: list
    curves: list
    planted_pairs: List[Tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        if self.kind == "tangency":
            pts = [p.to_json() for p in self.points]
            cvs = [c.to_json() for c in self.curves]
        elif self.kind == "anchored":
            pts = [p.to_json() for p in self.points]
            cvs = [c.to_json() for c in self.curves]
        else:
            pts = [p.to_json() for p in self.points]
            cvs = [c.to_json() for c in self.curves]
        return {
            "kind": self.kind,
            "points": pts,
            "curves": cvs,
            "planted": len(self.planted_pairs),
            "planted_pairs": [list(t) for t in self.planted_pairs],
        }

    @staticmethod
    def from_json(obj: dict) -> "Instance":
        kind = obj["kind"]
        if kind == "tangency":
            pts = [DirectedPoint.from_json(o) for o in obj["points"]]
            cvs = [Circle2.from_json(o) for o in obj["curves"]]
        elif kind == "anchored":
            pts = [Vec3.from_json(o) for o in obj["points"]]
            cvs = [AnchoredCircle.from_json(o) for o in obj["curves"]]
        elif kind == "lines3":
            pts = [Vec3.from_json(o) for o in obj["points"]]
            cvs = [Line3.from_json(o) for o in obj["curves"]]
        else:
            raise ValueError(f"unknown instance kind {kind}")
        pairs = [tuple(t) for t in obj.get("planted_pairs", [])]
        return Instance(kind, pts, cvs, pairs)


def rand_rat(rng: random.Random, mag: int, den_bound: int) -> Fraction:
    d = rng.randint(1, den_bound)
    return Fraction(rng.randint(-mag * d, mag * d), d)


def _rand_dp(rng, mag, den) -> DirectedPoint:
    return DirectedPoint(Vec2(rand_rat(rng, mag, den), rand_rat(rng, mag, den)), rand_rat(rng, mag, den))


def _rand_circle(rng, mag, den) -> Tuple[Circle2, Vec2]:
    """Random circle as r2 = |p - w|^2 from a rational point, plus the point."""
    while True:
        w = Vec2(rand_rat(rng, mag, den), rand_rat(rng, mag, den))
        p = Vec2(rand_rat(rng, mag, den), rand_rat(rng, mag, den))
        if p != w:
            return Circle2(w, (p - w).norm2()), p


def rand_anchored_circle(rng, mag=5, den=8) -> AnchoredCircle:
    while True:
        c = sphere_point(rand_rat(rng, mag, den), rand_rat(rng, mag, den))
        e1, e2 = tangent_basis(c)
        n = e1.scale(rand_rat(rng, mag, den)) + e2.scale(rand_rat(rng, mag, den))
        if not n.is_zero():
            return AnchoredCircle(c, n)


def _certify(instance: Instance) -> int:
    """Re-run the exact predicate on every planted pair; raises on failure."""
    if instance.kind == "tangency":
        pred = lambda i, j: is_tangent(instance.points[i], instance.curves[j])
    elif instance.kind == "anchored":
        pred = lambda i, j: anchored_incident(instance.points[i], instance.curves[j])
    else:
        pred = lambda i, j: instance.curves[j].contains(instance.points[i])
    for i, j in instance.planted_pairs:
        if not pred(i, j):
            raise AssertionError(f"planted pair ({i},{j}) failed exact re-check")
    return len(instance.planted_pairs)


def gen(spec: GenSpec) -> Tuple[Instance, int]:
    """Generate an instance; returns it with the certified planted count."""
    rng = random.Random(spec.seed)
    if spec.kind == "random-tangency":
        inst = _gen_random_tangency(spec, rng)
    elif spec.kind == "pencil":
        inst = _gen_pencil(spec, rng)
    elif spec.kind == "circle-sampled":
        inst = _gen_circle_sampled(spec, rng)
    elif spec.kind == "st-grid-horizontal-lines":
        inst = _gen_st_grid(spec, rng)
    elif spec.kind == "anchored-random":
        inst = _gen_anchored_random(spec, rng)
    else:
        inst = _gen_anchored_planted(spec, rng)
    return inst, _certify(inst)


def _gen_random_tangency(spec: GenSpec, rng) -> Instance:
    mag, den = spec.coord_range, spec.den_bound
    points = [_rand_dp(rng, mag, den) for _ in range(spec.m)]
    curves = [_rand_circle(rng, mag, den)[0] for _ in range(spec.n)]
    return Instance("tangency", points, curves)


def _gen_pencil(spec: GenSpec, rng) -> Instance:
    if spec.m != 1:
        raise InfeasibleSpecError("pencil supports exactly one directed point")
    mag, den = spec.coord_range, spec.den_bound
    dp = _rand_dp(rng, mag, den)
    normal = Vec2(-dp.u, 1)
    seen = set()
    curves = []
    while len(curves) < spec.n:
        s = rand_rat(rng, mag, den)
        if s == 0 or s in seen:
            continue
        seen.add(s)
        curves.append(Circle2(dp.p + normal.scale(s), s * s * normal.norm2()))
    pairs = [(0, j) for j in range(spec.n)]
    return Instance("tangency", [dp], curves, pairs)


def _gen_circle_sampled(spec: GenSpec, rng) -> Instance:
    if spec.n == 0 and spec.m > 0:
        raise InfeasibleSpecError("circle-sampled needs at least one circle")
    mag, den = spec.coord_range, spec.den_bound
    curves, bases = [], []
    for _ in range(spec.n):
        c, p = _rand_circle(rng, mag, den)
        curves.append(c)
        bases.append(p)
    points, pairs = [], []
    for i in range(spec.m):
        j = i % spec.n
        points.append(tangent_point_sample(curves[j], bases[j], rng))
        pairs.append((i, j))
    return Instance("tangency", points, curves, pairs)


def st_grid_k(target: int, z_levels: int = 1) -> int:
    """Grid parameter giving m = n = 2k^3 per level closest to the target."""
    k = max(2, round((target / (2 * z_levels)) ** (1 / 3)))
    return k


def _gen_st_grid(spec: GenSpec, rng) -> Instance:
    # Integer grid {1..k} x {1..2k^2} with lines y = s x + t (s in 1..2k,
    # t in 1..k^2), the classical tight slope/intercept family, replicated
    # on z_levels horizontal planes; m = n = 2k^3 per level.
    levels = max(1, spec.z_levels)
    k = st_grid_k(spec.m, levels)
    points, curves, pairs = [], [], []
    point_index = {}
    for lvl in range(levels):
        for i in range(1, k + 1):
            for j in range(1, 2 * k * k + 1):
                point_index[(i, j, lvl)] = len(points)
                points.append(Vec3(i, j, lvl))
    for lvl in range(levels):
        for s in range(1, 2 * k + 1):
            for t in range(1, k * k + 1):
                line_idx = len(curves)
                curves.append(Line3(Vec3(0, t, lvl), Vec3(1, s, 0)))
                for i in range(1, k + 1):
                    j = s * i + t
                    if 1 <= j <= 2 * k * k:
                        pairs.append((point_index[(i, j, lvl)], line_idx))
    return Instance("lines3", points, curves, pairs)


def _rand_ball_point(rng, den) -> Vec3:
    while True:
        p = Vec3(rand_rat(rng, 2, den), rand_rat(rng, 2, den), rand_rat(rng, 2, den))
        if not p.is_zero() and p.norm2() <= 4:
            return p


def _gen_anchored_random(spec: GenSpec, rng) -> Instance:
    points = [_rand_ball_point(rng, spec.den_bound) for _ in range(spec.m)]
    curves = [rand_anchored_circle(rng) for _ in range(spec.n)]
    return Instance("anchored", points, curves)


def _gen_anchored_planted(spec: GenSpec, rng) -> Instance:
    """Pencil-of-circles planting: one hub point on every circle, the other
    points placed at pairwise second intersections (degree 2) or sampled
    fresh on a circle (degree 1).

    Distinct anchored circles meet in at most two points, so planted pair
    counts are capped near n + 2m; the density target is honored up to that
    geometric ceiling and the returned count is the certified truth.
    """
    if spec.n == 0 and spec.m > 0:
        raise InfeasibleSpecError("anchored-planted needs at least one circle")
    if spec.m == 0:
        return Instance("anchored", [], [rand_anchored_circle(rng) for _ in range(spec.n)])
    target = round(spec.density * spec.m * spec.n)
    base = rand_anchored_circle(rng)
    hub = anchored_point_sample(base, rng)
    while hub.norm2() >= 4:
        hub = anchored_point_sample(base, rng)
    curves: List[AnchoredCircle] = []
    seen = set()
    guard = 0
    while len(curves) < spec.n and guard < 50 * spec.n:
        guard += 1
        g = h_p_sample(hub, 1, rng, base_center=base.c)[0]
        key = (g.c, g.n)
        if key in seen:
            continue
        seen.add(key)
        curves.append(g)
    if len(curves) < spec.n:
        raise InfeasibleSpecError("could not build enough distinct circles")
    points: List[Vec3] = [hub]
    pairs: List[Tuple[int, int]] = [(0, j) for j in range(spec.n)]
    want_degree2 = max(0, min(spec.m - 1, target - (spec.n + spec.m - 1)))
    # degree-2 points: second intersections of circle pairs
    pair_iter = ((a, b) for a in range(len(curves)) for b in range(a + 1, len(curves)))
    existing = {hub}
    for a, b in pair_iter:
        if len(points) - 1 >= want_degree2:
            break
        pts = anchored_pair_intersections(curves[a], curves[b])
        second = [x for x in pts if not x.is_zero() and x != hub]
        if not second or second[0] in existing:
            continue
        x = second[0]
        idx = len(points)
        points.append(x)
        existing.add(x)
        pairs.append((idx, a))
        pairs.append((idx, b))
    # degree-1 fill: fresh samples on circles, round-robin
    j = 0
    while len(points) < spec.m:
        x = anchored_point_sample(curves[j % spec.n], rng)
        if x in existing:
            j += 1
            continue
        idx = len(points)
        points.append(x)
        existing.add(x)
        pairs.append((idx, j % spec.n))
        j += 1
    return Instance("anchored", points, curves, pairs)


# ---------------------------------------------------------------------------
# Horizontal-lines eliminant
# ---------------------------------------------------------------------------

FSTAR_RING = ("t1", "t2", "a1", "b1", "c1", "a2", "b2", "c2")


def horizontal_line_Fstar() -> MPoly:
    """Eliminant of the meeting conditions for two horizontal lines.

    Lines are parameterized as (x, y, z) = (t, a t + b, c).  Equating the
    coordinates of line 1 at t1 with line 2 at t2 and eliminating t2 then
    t1 by resultants leaves a polynomial in (a1, b1, c1, a2, b2, c2) whose
    zero set is {c1 = c2} away from the parallel-slope locus a1 = a2.
    """
    ring = FSTAR_RING
    t1 = MPoly.var(ring, "t1")
    t2 = MPoly.var(ring, "t2")
    a1, b1, c1 = (MPoly.var(ring, v) for v in ("a1", "b1", "c1"))
    a2, b2, c2 = (MPoly.var(ring, v) for v in ("a2", "b2", "c2"))
    eq_x = t1 - t2
    eq_y = a1 * t1 + b1 - a2 * t2 - b2
    eq_z = c1 - c2
    r1 = resultant(eq_x, eq_y, "t2")
    return resultant(r1, eq_z, "t1")


def eval_Fstar(fstar: MPoly, line1: Tuple[Fraction, Fraction, Fraction],
               line2: Tuple[Fraction, Fraction, Fraction]) -> Fraction:
    a1, b1, c1 = line1
    a2, b2, c2 = line2
    return fstar.eval({"t1": 0, "t2": 0, "a1": a1, "b1": b1, "c1": c1,
                       "a2": a2, "b2": b2, "c2": c2})
