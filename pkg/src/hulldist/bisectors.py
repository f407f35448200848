"""Bisector tracing, circumscribing homothets, and triangle classification.

For a strictly convex gauge, the locus of points equidistant from two sites
is a continuous curve parametrized by the common distance; a triangle has a
unique circumscribing homothet of the unit ball, and the location of the
farthest-from-vertices point inside the triangle is determined by whether
the homothet center lies inside, on, or outside the triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distance import CertifiedValue  # noqa: F401  (re-exported in reports)
from .errors import (
    DegenerateTriangle,
    InvalidSideLengths,
    NotStrictlyConvex,
    RootNotBracketed,
    SolverDiverged,
)
from .gauges import Gauge, boundary_point, lp
from .geometry import EPS_GEOM, EPS_SOLVE, CompactSet, ConvexPolygon, affine_dimension, orientation

ACUTE = "acute"
RIGHT = "right"
OBTUSE = "obtuse"


@dataclass(frozen=True)
class BisectorTrace:
    v1: np.ndarray
    v2: np.ndarray
    samples: list  # (t, point) pairs, t is gauge distance above the midpoint level
    gauge: Gauge


@dataclass(frozen=True)
class CircumscribedBall:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class TriangleReport:
    ball: CircumscribedBall
    classification: str
    haus_value: float
    haus_points: list


def _require_strictly_convex(g: Gauge):
    if not g.traits().strictly_convex:
        raise NotStrictlyConvex(
            "bisector machinery needs a strictly convex gauge (p > 1 or ellipse)"
        )


def _unit(v):
    return v / np.hypot(*v)


def bisector_point(v1, v2, g: Gauge, t: float, eps_solve: float = EPS_SOLVE) -> np.ndarray:
    """The point at gauge distance |t| + r from both v1 and v2, where r is half
    the gauge length of [v1, v2]; t >= 0 selects the half-plane to the left of
    the directed line v1 -> v2, t < 0 the right one.

    Solved by bisection of the angular parameter on the boundary of the ball
    around v1: the two ball boundaries (same radius, translated) meet in
    exactly one point per half-plane, so the residual changes sign once.
    """
    _require_strictly_convex(g)
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    D = g.norm(v2 - v1)
    if D == 0.0:
        raise DegenerateTriangle("bisector of coincident points is undefined")
    R = abs(t) + D / 2.0
    if t == 0.0:
        return 0.5 * (v1 + v2)
    w = _unit(v2 - v1)
    perp = np.array([-w[1], w[0]]) if t > 0 else np.array([w[1], -w[0]])

    def residual(theta):
        d = np.cos(theta) * w + np.sin(theta) * perp
        x = boundary_point(g, d, v1, R)
        return g.norm(x - v2) - R, x

    lo, hi = 0.0, np.pi
    f_lo, _ = residual(lo)
    f_hi, _ = residual(hi)
    if f_lo > 0 or f_hi < 0:
        raise SolverDiverged("bisector bracket failed")
    x = None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid, x = residual(mid)
        if f_mid <= 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-17:
            break
    f_mid, x = residual(0.5 * (lo + hi))
    if abs(f_mid) > eps_solve:
        raise SolverDiverged(f"bisector residual {f_mid:.2e} above target")
    return x


def trace_bisector(v1, v2, g: Gauge, t_max: float, n: int) -> BisectorTrace:
    """Sample the bisector curve at n evenly spaced distance parameters."""
    if t_max <= 0 or n < 3:
        raise ValueError("t_max must be positive and n >= 3")
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    ts = np.linspace(-t_max, t_max, n)
    samples = [(float(t), bisector_point(v1, v2, g, float(t))) for t in ts]
    return BisectorTrace(v1, v2, samples, g)


def _triangle_array(T) -> np.ndarray:
    if isinstance(T, CompactSet):
        V = T.point_array()
    else:
        V = np.asarray(T, dtype=float).reshape(-1, 2)
    if V.shape != (3, 2):
        raise DegenerateTriangle("expected exactly three vertices")
    if affine_dimension(CompactSet.from_points(V)) < 2:
        raise DegenerateTriangle("triangle vertices are collinear")
    return V


def _l2_circumcenter(V: np.ndarray) -> np.ndarray:
    a, b, c = V
    d = 2.0 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    sb = np.dot(b - a, b + a)
    sc = np.dot(c - a, c + a)
    return np.array(
        [
            (sb * (c[1] - a[1]) - sc * (b[1] - a[1])) / d,
            (sc * (b[0] - a[0]) - sb * (c[0] - a[0])) / d,
        ]
    )


def _incenter(V: np.ndarray) -> np.ndarray:
    a, b, c = V
    la = np.hypot(*(b - c))
    lb = np.hypot(*(a - c))
    lc = np.hypot(*(a - b))
    return (la * a + lb * b + lc * c) / (la + lb + lc)


def circumscribe_triangle(T, g: Gauge, eps_solve: float = EPS_SOLVE) -> CircumscribedBall:
    """Center and radius of the unique scaled translate of the unit ball
    passing through all three triangle vertices (strictly convex smooth gauge).

    Damped Newton with a numerical Jacobian from several starts; all starts
    must agree (uniqueness check).  Falls back to bisection along a bisector
    curve if Newton stalls.
    """
    traits = g.traits()
    if not (traits.strictly_convex and traits.smooth_boundary):
        raise NotStrictlyConvex("circumscription needs a strictly convex smooth gauge")
    V = _triangle_array(T)
    diam = float(max(np.hypot(*(V[i] - V[j])) for i in range(3) for j in range(i)))

    def F(c):
        d = g.norms(V - c[None, :])
        return np.array([d[0] - d[1], d[0] - d[2]]), float(d[0])

    def newton(c0):
        c = c0.astype(float).copy()
        h = 1e-7 * (1.0 + diam)
        for _ in range(80):
            r, _ = F(c)
            if np.max(np.abs(r)) < 1e-14 * (1.0 + diam):
                return c
            J = np.empty((2, 2))
            for k in range(2):
                e = np.zeros(2)
                e[k] = h
                rp, _ = F(c + e)
                rm, _ = F(c - e)
                J[:, k] = (rp - rm) / (2 * h)
            try:
                step = np.linalg.solve(J, -r)
            except np.linalg.LinAlgError:
                return None
            lam = 1.0
            base = np.max(np.abs(r))
            for _ in range(30):
                r2, _ = F(c + lam * step)
                if np.max(np.abs(r2)) < base:
                    c = c + lam * step
                    break
                lam *= 0.5
            else:
                return None
        r, _ = F(c)
        return c if np.max(np.abs(r)) < eps_solve else None

    starts = [_l2_circumcenter(V), np.mean(V, axis=0), _incenter(V)]
    sols = [s for s in (newton(c0) for c0 in starts) if s is not None]
    if not sols:
        sol = _circumscribe_by_bisector(V, g, eps_solve)
        if sol is None:
            raise SolverDiverged("circumscription failed from all starts")
        sols = [sol]
    for s in sols[1:]:
        if np.hypot(*(s - sols[0])) > 10 * max(eps_solve, 1e-9) * (1.0 + diam):
            raise SolverDiverged("circumscription starts disagree; uniqueness check failed")
    c = sols[0]
    radius = float(np.mean(g.norms(V - c[None, :])))
    return CircumscribedBall(c, radius)


def _circumscribe_by_bisector(V, g, eps_solve):
    """Robust fallback: walk the (v1, v2) bisector to equalize distance to v3."""

    def G(t):
        x = bisector_point(V[0], V[1], g, t)
        return g.norm(x - V[0]) - g.norm(x - V[2]), x

    span = float(max(np.hypot(*(V[i] - V[j])) for i in range(3) for j in range(i)))
    ts = np.concatenate([-np.geomspace(4 * span, 1e-9, 40), [0.0], np.geomspace(1e-9, 4 * span, 40)])
    vals = []
    for t in ts:
        try:
            vals.append(G(float(t))[0])
        except SolverDiverged:
            vals.append(np.nan)
    for i in range(len(ts) - 1):
        a, b = vals[i], vals[i + 1]
        if np.isnan(a) or np.isnan(b) or a * b > 0:
            continue
        lo, hi = float(ts[i]), float(ts[i + 1])
        flo = a
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm, x = G(mid)
            if fm == 0.0 or hi - lo < 1e-16:
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        fm, x = G(0.5 * (lo + hi))
        if abs(fm) <= eps_solve:
            return x
    return None


def classify_triangle(T, g: Gauge, eps_geom: float = EPS_GEOM) -> str:
    """K-acute / K-right / K-obtuse by the homothet center's location."""
    V = _triangle_array(T)
    ball = circumscribe_triangle(T, g)
    return _classify_center(V, ball.center, eps_geom)


def _ccw(V: np.ndarray) -> np.ndarray:
    return V if orientation(V[0], V[1], V[2]) > 0 else V[::-1]


def _classify_center(V, center, eps_geom):
    from .geometry import polygon_signed_distance

    poly = ConvexPolygon(_ccw(V))
    sd = polygon_signed_distance(center, poly)
    diam = float(max(np.hypot(*(V[i] - V[j])) for i in range(3) for j in range(i)))
    band = eps_geom * (1.0 + diam)
    if sd > band:
        return ACUTE
    if sd < -band:
        return OBTUSE
    return RIGHT


def triangle_vertex_haus(T, g: Gauge, eps_solve: float = EPS_SOLVE) -> TriangleReport:
    """d^(K) of a triangle's vertex set with its attaining point(s).

    Acute/right: the homothet center attains it and the value is the radius.
    Obtuse: the two bisectors of the short sides cross the long side at
    points Q, and the value is the larger gauge distance from Q to the
    off-side vertex.
    """
    V = _triangle_array(T)
    ball = circumscribe_triangle(T, g, eps_solve)
    cls = _classify_center(V, ball.center, EPS_GEOM)
    if cls in (ACUTE, RIGHT):
        return TriangleReport(ball, cls, ball.radius, [ball.center])

    # order vertices: [v2, v3] is the long side, whose line separates v1 from the center
    order = None
    side_len = {}
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        side_len[k] = g.norm(V[i] - V[j])
    for k in sorted(side_len, key=lambda q: -side_len[q]):
        i, j = (k + 1) % 3, (k + 2) % 3
        e = V[j] - V[i]
        s_v = e[0] * (V[k] - V[i])[1] - e[1] * (V[k] - V[i])[0]
        s_c = e[0] * (ball.center - V[i])[1] - e[1] * (ball.center - V[i])[0]
        if s_v * s_c < 0:
            order = (k, i, j)
            break
    if order is None:
        raise RootNotBracketed("no triangle side separates the center; classification inconsistent")
    v1, v2, v3 = V[order[0]], V[order[1]], V[order[2]]

    def q_point(vj, vk):
        def F(lam):
            x = lam * vj + (1 - lam) * vk
            return g.norm(x - v1) - g.norm(x - vj), x

        lo, hi = 0.5 + EPS_GEOM, 1.0 - EPS_GEOM
        f_lo, _ = F(lo)
        f_hi, _ = F(hi)
        if not (f_lo < 0 < f_hi):
            raise RootNotBracketed(
                "short-side bisector does not cross the long side in (1/2, 1)"
            )
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm, x = F(mid)
            if fm < 0:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-17:
                break
        _, x = F(0.5 * (lo + hi))
        return x

    q12 = q_point(v2, v3)
    q13 = q_point(v3, v2)
    d12 = g.norm(q12 - v1)
    d13 = g.norm(q13 - v1)
    val = max(d12, d13)
    points = []
    if d12 >= val - eps_solve:
        points.append(q12)
    if d13 >= val - eps_solve:
        points.append(q13)
    return TriangleReport(ball, OBTUSE, float(val), points)


def key_triangle_bound_check(T, p: float, a: float, b: float, eps_solve: float = EPS_SOLVE) -> bool:
    """True iff the triangle's vertex-set distance obeys the two-side bound
    max{1, 2^((p-2)/p)} * ((a/2)^p + (b/2)^p)^(1/p)."""
    rep = triangle_vertex_haus(T, lp(p))
    const = max(1.0, 2.0 ** ((p - 2.0) / p))
    rhs = const * ((a / 2.0) ** p + (b / 2.0) ** p) ** (1.0 / p)
    return rep.haus_value <= rhs + eps_solve


def _chord_point(g: Gauge, v1: np.ndarray, radius: float, length: float, ccw: bool) -> np.ndarray | None:
    """Second endpoint of a chord of given gauge length from v1 on the ball
    boundary at the origin; None when length exceeds the diameter through v1."""
    if length > 2 * radius:
        return None
    th1 = np.arctan2(v1[1], v1[0])
    sign = 1.0 if ccw else -1.0

    def point(dth):
        d = np.array([np.cos(th1 + sign * dth), np.sin(th1 + sign * dth)])
        return boundary_point(g, d, (0.0, 0.0), radius)

    lo, hi = 0.0, np.pi
    f = lambda dth: g.norm(point(dth) - v1) - length
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > 0 or f_hi < 0:
        return None
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return point(0.5 * (lo + hi))


def right_triangle_sup_search(a: float, b: float, p: float, budget: int = 400) -> float:
    """Best found d^(l_p)(vert(T)) over right triangles with two sides of
    gauge lengths a and b.

    Degenerate side lengths give intervals; otherwise triangles are built on
    a circumscribed ball at the origin (two chords from a sampled first
    vertex), and the right-angle condition (center on the triangle boundary)
    is solved for the ball radius along each scan direction.  The canonical
    axis-aligned right triangle is always seeded.
    """
    if a < 0 or b < 0:
        raise InvalidSideLengths("side lengths must be nonnegative")
    if a == 0 and b == 0:
        return 0.0
    if a == 0 or b == 0:
        return max(a, b) / 2.0
    g = lp(p)
    T0 = np.array([[0.0, 0.0], [a, 0.0], [0.0, b]])
    best = triangle_vertex_haus(T0, g).haus_value

    r_lo = max(a, b) / 2.0
    n_dirs = max(8, budget // 24)
    radii = np.geomspace(r_lo * 1.0001, r_lo * 8.0, 24)
    diam_tol = EPS_GEOM

    for phi in np.linspace(0.0, 2 * np.pi, n_dirs, endpoint=False):
        for topo in ((True, False), (True, True)):
            prev_r, prev_s = None, None
            for r in radii:
                v1 = boundary_point(g, (np.cos(phi), np.sin(phi)), (0.0, 0.0), float(r))
                v2 = _chord_point(g, v1, float(r), a, topo[0])
                v3 = _chord_point(g, v1, float(r), b, topo[1])
                s = _right_residual(v1, v2, v3)
                if s is not None and prev_s is not None and s * prev_s < 0:
                    rr = _bisect_radius(g, phi, a, b, topo, prev_r, float(r))
                    if rr is not None:
                        best = max(best, rr)
                prev_r, prev_s = float(r), s
    return best


def _right_residual(v1, v2, v3):
    """Signed distance of the origin to the triangle boundary (positive inside)."""
    if v2 is None or v3 is None:
        return None
    V = np.array([v1, v2, v3])
    if abs(orientation(V[0], V[1], V[2], 1e-12)) == 0:
        return None
    from .geometry import polygon_signed_distance

    try:
        return polygon_signed_distance((0.0, 0.0), ConvexPolygon(_ccw(V)))
    except Exception:
        return None


def _bisect_radius(g, phi, a, b, topo, r_lo, r_hi):
    d = np.array([np.cos(phi), np.sin(phi)])

    def s_of(r):
        v1 = boundary_point(g, d, (0.0, 0.0), r)
        v2 = _chord_point(g, v1, r, a, topo[0])
        v3 = _chord_point(g, v1, r, b, topo[1])
        return _right_residual(v1, v2, v3)

    s_lo = s_of(r_lo)
    if s_lo is None:
        return None
    for _ in range(80):
        mid = 0.5 * (r_lo + r_hi)
        sm = s_of(mid)
        if sm is None:
            return None
        if (sm < 0) == (s_lo < 0):
            r_lo, s_lo = mid, sm
        else:
            r_hi = mid
    return 0.5 * (r_lo + r_hi)
