"""Exact incidence counting with an optional floating-point prefilter.

Exact mode clears denominators once per object and evaluates integer
residuals over all m*n pairs.  Prefilter mode screens pairs with float
residuals in cache-friendly tiles (numpy) and confirms every survivor with
the same integer predicate; the screen tolerance is a certified forward
error bound on the float evaluation, so the prefilter may only add
candidates, never drop a true incidence.  Totals are identical in both
modes and independent of the thread count (tiles merge by index).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .anchored import AnchoredCircle
from .dual3 import DualLine3, DualPoint3, Line3
from .exact import Vec3
from .tangency import Circle2, DirectedPoint

FLOAT_EPS = float(np.finfo(np.float64).eps)


@dataclass
class IncidenceReport:
    m: int
    n: int
    total: int
    per_point: List[int]
    per_curve: List[int]
    mode: str
    kind: str
    seconds: float
    tau: Optional[Tuple[float, ...]] = None

    def to_json(self, histograms: bool = False) -> dict:
        out = {
            "m": self.m,
            "n": self.n,
            "total": self.total,
            "mode": self.mode,
            "kind": self.kind,
            "seconds": self.seconds,
        }
        if histograms:
            out["per_point"] = self.per_point
            out["per_curve"] = self.per_curve
        return out

    def csv_row(self) -> str:
        return f"{self.m},{self.n},{self.total},{self.mode},{self.seconds:.6f}"


CSV_HEADER = "m,n,total,mode,seconds"


def _detect_kind(points: Sequence, curves: Sequence) -> str:
    if not points or not curves:
        return "empty"
    pt, cv = points[0], curves[0]
    if isinstance(pt, DirectedPoint) and isinstance(cv, Circle2):
        kind = "tangency"
    elif isinstance(pt, (Vec3, DualPoint3)) and isinstance(cv, AnchoredCircle):
        kind = "anchored"
    elif isinstance(pt, (Vec3, DualPoint3)) and isinstance(cv, (Line3, DualLine3)):
        kind = "lines3"
    else:
        raise ValueError("mixed instance kinds")
    pt_type = type(points[0])
    cv_type = type(curves[0])
    if any(type(p) is not pt_type for p in points) or any(type(c) is not cv_type for c in curves):
        raise ValueError("mixed instance kinds")
    return kind


def _as_vec3(p) -> Vec3:
    return p.as_vec3() if isinstance(p, DualPoint3) else p


def _as_line3(c) -> Line3:
    return c.as_line3() if isinstance(c, DualLine3) else c


# --- integer-cleared forms ------------------------------------------------


def _int_dp(dp: DirectedPoint) -> Tuple[int, int, int, int]:
    d = math.lcm(dp.p.x.denominator, dp.p.y.denominator, dp.u.denominator)
    return (int(dp.p.x * d), int(dp.p.y * d), int(dp.u * d), d)


def _int_circle(c: Circle2) -> Tuple[int, int, int, int, int]:
    e = math.lcm(c.center.x.denominator, c.center.y.denominator)
    return (int(c.center.x * e), int(c.center.y * e), e, c.r2.numerator, c.r2.denominator)


def _int_vec3(v: Vec3) -> Tuple[int, int, int, int]:
    d = math.lcm(v.x.denominator, v.y.denominator, v.z.denominator)
    return (int(v.x * d), int(v.y * d), int(v.z * d), d)


def _pair_tangency(P, C) -> bool:
    ax, ay, au, d = P
    bx, by, e, rn, rd = C
    wx = ax * e - bx * d
    wy = ay * e - by * d
    if au * wy + d * wx != 0:
        return False
    de = d * e
    return rd * (wx * wx + wy * wy) == rn * de * de


def _pair_anchored(P, C) -> bool:
    ax, ay, az, d = P
    nx, ny, nz, cx, cy, cz, e = C
    if nx * ax + ny * ay + nz * az != 0:
        return False
    wx = ax * e - cx * d
    wy = ay * e - cy * d
    wz = az * e - cz * d
    de = d * e
    return wx * wx + wy * wy + wz * wz == de * de


def _pair_lines3(P, C) -> bool:
    ax, ay, az, d = P
    qx, qy, qz, e, vx, vy, vz = C
    wx = ax * e - qx * d
    wy = ay * e - qy * d
    wz = az * e - qz * d
    return (
        wy * vz - wz * vy == 0
        and wz * vx - wx * vz == 0
        and wx * vy - wy * vx == 0
    )


def _prepare(kind: str, points, curves):
    if kind == "tangency":
        return [_int_dp(p) for p in points], [_int_circle(c) for c in curves], _pair_tangency
    if kind == "anchored":
        pts = [_int_vec3(_as_vec3(p)) for p in points]
        cvs = []
        for g in curves:
            cx = _int_vec3(g.c)
            cvs.append((int(g.n.x), int(g.n.y), int(g.n.z), cx[0], cx[1], cx[2], cx[3]))
        return pts, cvs, _pair_anchored
    if kind == "lines3":
        pts = [_int_vec3(_as_vec3(p)) for p in points]
        cvs = []
        for raw in curves:
            line = _as_line3(raw)
            q = _int_vec3(line.point)
            cvs.append((q[0], q[1], q[2], q[3], int(line.direction.x), int(line.direction.y), int(line.direction.z)))
        return pts, cvs, _pair_lines3
    raise ValueError(f"unknown kind {kind}")


# --- float prefilter ------------------------------------------------------


def _float_arrays(kind: str, points, curves):
    if kind == "tangency":
        P = np.array([[float(p.p.x), float(p.p.y), float(p.u)] for p in points])
        C = np.array([[float(c.center.x), float(c.center.y), float(c.r2)] for c in curves])
        return P, C
    if kind == "anchored":
        P = np.array([[float(v.x), float(v.y), float(v.z)] for v in map(_as_vec3, points)])
        C = np.array(
            [
                [float(g.c.x), float(g.c.y), float(g.c.z), float(g.n.x), float(g.n.y), float(g.n.z)]
                for g in curves
            ]
        )
        return P, C
    P = np.array([[float(v.x), float(v.y), float(v.z)] for v in map(_as_vec3, points)])
    C = np.array(
        [
            [
                float(l.point.x), float(l.point.y), float(l.point.z),
                float(l.direction.x), float(l.direction.y), float(l.direction.z),
            ]
            for l in map(_as_line3, curves)
        ]
    )
    return P, C


def _tolerances(kind: str, P: np.ndarray, C: np.ndarray) -> Tuple[float, ...]:
    """Certified screen tolerances from the input magnitude range.

    The float residuals below use fewer than 16 flops on inputs converted
    from exact rationals (each within eps relative error), so the forward
    error of every residual is below 64*eps*(1 + M)^k for the product
    magnitude M of the factors involved; the generous constant keeps the
    bound sound without tracking each rounding.
    """
    m = max(1.0, float(np.max(np.abs(P))) if P.size else 1.0,
            float(np.max(np.abs(C))) if C.size else 1.0)
    if kind == "tangency":
        tau1 = 64 * FLOAT_EPS * (m * m + m + 1)
        tau2 = 64 * FLOAT_EPS * (m * m + m + 1)
        return (tau1, tau2)
    if kind == "anchored":
        return (64 * FLOAT_EPS * (m * m + 1), 64 * FLOAT_EPS * (m * m + 1))
    return (64 * FLOAT_EPS * (m * m + 1),) * 3


def _tile_candidates(kind: str, P: np.ndarray, C: np.ndarray, i0: int, i1: int,
                     j0: int, j1: int, tau: Tuple[float, ...]) -> np.ndarray:
    p = P[i0:i1]
    c = C[j0:j1]
    if kind == "tangency":
        dx = p[:, 0:1] - c[None, :, 0].reshape(1, -1)
        dy = p[:, 1:2] - c[None, :, 1].reshape(1, -1)
        r1 = dx * dx + dy * dy - c[None, :, 2].reshape(1, -1)
        r2 = p[:, 2:3] * dy + dx
        mask = (np.abs(r1) <= tau[0]) & (np.abs(r2) <= tau[1])
    elif kind == "anchored":
        wx = p[:, 0:1] - c[None, :, 0].reshape(1, -1)
        wy = p[:, 1:2] - c[None, :, 1].reshape(1, -1)
        wz = p[:, 2:3] - c[None, :, 2].reshape(1, -1)
        r1 = wx * wx + wy * wy + wz * wz - 1.0
        r2 = (
            p[:, 0:1] * c[None, :, 3].reshape(1, -1)
            + p[:, 1:2] * c[None, :, 4].reshape(1, -1)
            + p[:, 2:3] * c[None, :, 5].reshape(1, -1)
        )
        mask = (np.abs(r1) <= tau[0]) & (np.abs(r2) <= tau[1])
    else:
        wx = p[:, 0:1] - c[None, :, 0].reshape(1, -1)
        wy = p[:, 1:2] - c[None, :, 1].reshape(1, -1)
        wz = p[:, 2:3] - c[None, :, 2].reshape(1, -1)
        vx = c[None, :, 3].reshape(1, -1)
        vy = c[None, :, 4].reshape(1, -1)
        vz = c[None, :, 5].reshape(1, -1)
        r1 = wy * vz - wz * vy
        r2 = wz * vx - wx * vz
        r3 = wx * vy - wy * vx
        mask = (np.abs(r1) <= tau[0]) & (np.abs(r2) <= tau[1]) & (np.abs(r3) <= tau[2])
    ii, jj = np.nonzero(mask)
    return np.stack([ii + i0, jj + j0], axis=1) if ii.size else np.empty((0, 2), dtype=int)


def count(points: Sequence, curves: Sequence, mode: str = "exact",
          threads: int = 1, tile: int = 1024) -> IncidenceReport:
    """Exact incidence count between homogeneous points and curves.

    mode "exact" evaluates the integer predicate on every pair; "prefilter"
    screens with float residuals first and confirms survivors exactly.
    """
    if mode not in ("exact", "prefilter"):
        raise ValueError(f"unknown mode {mode}")
    start = time.perf_counter()
    kind = _detect_kind(points, curves)
    m, n = len(points), len(curves)
    per_point = [0] * m
    per_curve = [0] * n
    if kind == "empty":
        return IncidenceReport(m, n, 0, per_point, per_curve, mode, kind, time.perf_counter() - start)

    ipts, icvs, pair = _prepare(kind, points, curves)
    total = 0
    tau: Optional[Tuple[float, ...]] = None

    if mode == "exact":
        for i, pf in enumerate(ipts):
            row = 0
            for j, cf in enumerate(icvs):
                if pair(pf, cf):
                    row += 1
                    per_curve[j] += 1
            per_point[i] = row
            total += row
    else:
        P, C = _float_arrays(kind, points, curves)
        tau = _tolerances(kind, P, C)
        tiles = []
        for i0 in range(0, m, tile):
            for j0 in range(0, n, tile):
                tiles.append((i0, min(i0 + tile, m), j0, min(j0 + tile, n)))

        def work(span):
            i0, i1, j0, j1 = span
            return _tile_candidates(kind, P, C, i0, i1, j0, j1, tau)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                chunks = list(pool.map(work, tiles))
        else:
            chunks = [work(span) for span in tiles]
        for cand in chunks:  # tile order is deterministic
            for i, j in cand:
                if pair(ipts[i], icvs[j]):
                    total += 1
                    per_point[i] += 1
                    per_curve[j] += 1

    return IncidenceReport(
        m, n, total, per_point, per_curve, mode, kind,
        time.perf_counter() - start, tau,
    )


def t_rich_points(points: Sequence, curves: Sequence, t: int,
                  mode: str = "exact", threads: int = 1) -> List:
    """The points incident to at least t curves."""
    if t < 1:
        raise ValueError("t must be at least 1")
    report = count(points, curves, mode=mode, threads=threads)
    return [p for p, deg in zip(points, report.per_point) if deg >= t]


def bound_ratio(report: IncidenceReport) -> float:
    """total / (m^(3/5) n^(3/5) + m + n), the shape of the tangency bound."""
    m, n = report.m, report.n
    denom = (m ** 0.6) * (n ** 0.6) + m + n
    return report.total / denom


def exponent_fit(series: Sequence[Tuple[int, int, int]]) -> Tuple[float, float, float]:
    """Least-squares slope of log(total) against log(max(m, n)).

    Built for scaling families with m = n (or one side pinned); returns
    (slope, intercept, sum of squared residuals).
    """
    xs, ys = [], []
    for m, n, total in series:
        if total > 0:
            xs.append(math.log(max(m, n)))
            ys.append(math.log(total))
    if len(xs) < 3:
        raise ValueError("need at least 3 series points with positive totals")
    if max(xs) == min(xs):
        raise ValueError("degenerate series: no scale variation")
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    rss = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    return slope, intercept, rss
