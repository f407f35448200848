"""Planar primitives: points, segments, convex polygons, hulls, Minkowski sums.

Compact sets are finite unions of points, segments, and filled convex
polygons.  All predicates take an absolute slack ``eps`` (default
``EPS_GEOM``); orientation tests fall back to exact rational arithmetic on
near-ties so hulls stay consistent at desk scale without a full exact kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInput, MTooLarge, UnsupportedPrimitive

EPS_GEOM = 1e-9
EPS_SOLVE = 1e-9
EPS_CERT = 1e-6

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical slacks: geometry predicates, 1-D solves, certified enclosure width."""

    eps_geom: float = EPS_GEOM
    eps_solve: float = EPS_SOLVE
    eps_cert: float = EPS_CERT
    box_cap: int = 2_000_000

    def __post_init__(self):
        if not (self.eps_geom > 0 and self.eps_solve > 0 and self.eps_cert > 0):
            raise InvalidInput("tolerances must be positive")
        if self.eps_geom < np.finfo(float).eps:
            raise InvalidInput("eps_geom below machine epsilon")


DEFAULT_TOL = ToleranceConfig()


def as_point(p) -> np.ndarray:
    """Coerce to a finite (2,) float array."""
    a = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"point has non-finite coordinates: {p!r}")
    return a


@dataclass(frozen=True)
class Segment:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if np.array_equal(self.a, self.b):
            raise InvalidInput("degenerate segment; store a point instead")

    def points(self) -> np.ndarray:
        return np.array([self.a, self.b])


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex vertex cycle, counterclockwise, signed area > 0."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidInput("polygon needs >= 3 vertices of shape (m, 2)")
        if not np.all(np.isfinite(v)):
            raise InvalidInput("polygon has non-finite vertices")
        object.__setattr__(self, "vertices", v)
        m = len(v)
        for i in range(m):
            o = orientation(v[i], v[(i + 1) % m], v[(i + 2) % m])
            if o <= 0:
                raise InvalidInput(
                    "polygon vertices must be strictly convex and counterclockwise"
                )

    def points(self) -> np.ndarray:
        return self.vertices

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


Primitive = "np.ndarray | Segment | ConvexPolygon"


def _primitive_points(prim) -> np.ndarray:
    if isinstance(prim, (Segment, ConvexPolygon)):
        return prim.points()
    return as_point(prim).reshape(1, 2)


@dataclass(frozen=True)
class CompactSet:
    """Finite union of points, segments, and filled convex polygons."""

    primitives: tuple = field(default_factory=tuple)

    def __post_init__(self):
        prims = []
        for p in self.primitives:
            if isinstance(p, (Segment, ConvexPolygon)):
                prims.append(p)
            else:
                prims.append(as_point(p))
        if not prims:
            raise InvalidInput("compact set must be nonempty")
        object.__setattr__(self, "primitives", tuple(prims))

    @staticmethod
    def from_points(pts) -> "CompactSet":
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return CompactSet(tuple(pts[i] for i in range(len(pts))))

    def all_points(self) -> np.ndarray:
        """Vertex/endpoint cloud spanning the same convex hull as the set."""
        return np.vstack([_primitive_points(p) for p in self.primitives])

    def is_points_only(self) -> bool:
        return all(isinstance(p, np.ndarray) for p in self.primitives)

    def point_array(self) -> np.ndarray:
        if not self.is_points_only():
            raise UnsupportedPrimitive("operation requires a finite point set")
        return np.vstack([p.reshape(1, 2) for p in self.primitives])

    def translate(self, t) -> "CompactSet":
        t = as_point(t)
        out = []
        for p in self.primitives:
            if isinstance(p, Segment):
                out.append(Segment(p.a + t, p.b + t))
            elif isinstance(p, ConvexPolygon):
                out.append(ConvexPolygon(p.vertices + t))
            else:
                out.append(p + t)
        return CompactSet(tuple(out))

    def scale(self, s: float) -> "CompactSet":
        out = []
        for p in self.primitives:
            if isinstance(p, Segment):
                out.append(Segment(p.a * s, p.b * s))
            elif isinstance(p, ConvexPolygon):
                v = p.vertices * s
                out.append(ConvexPolygon(v if s > 0 else v[::-1]))
            else:
                out.append(p * s)
        return CompactSet(tuple(out))


def orientation(p, q, r, eps: float = EPS_GEOM) -> int:
    """Sign of the signed area of (p, q, r): +1 ccw, -1 cw, 0 collinear.

    Near-zero float results are recomputed with exact rational arithmetic,
    which is exact for IEEE doubles.
    """
    px, py = float(p[0]), float(p[1])
    qx, qy = float(q[0]), float(q[1])
    rx, ry = float(r[0]), float(r[1])
    det = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    scale = max(abs(qx - px), abs(qy - py), abs(rx - px), abs(ry - py), 1.0)
    if abs(det) > eps * scale * scale:
        return 1 if det > 0 else -1
    exact = (Fraction(qx) - Fraction(px)) * (Fraction(ry) - Fraction(py)) - (
        Fraction(qy) - Fraction(py)
    ) * (Fraction(rx) - Fraction(px))
    if exact > 0:
        return 1
    if exact < 0:
        return -1
    return 0


def dedupe_points(pts: np.ndarray, eps: float = EPS_GEOM) -> np.ndarray:
    """Merge points within eps (first occurrence wins)."""
    out = []
    for p in np.asarray(pts, dtype=float).reshape(-1, 2):
        if not any(np.hypot(*(p - q)) <= eps for q in out):
            out.append(p)
    return np.array(out)


def convex_hull(S: CompactSet, eps: float = EPS_GEOM):
    """Convex hull of the union of all primitive point sets.

    Returns a ConvexPolygon, a Segment, or a single point depending on the
    affine dimension of S.  Monotone chain on the deduplicated vertex cloud.
    """
    pts = dedupe_points(S.all_points(), eps)
    return hull_of_points(pts, eps)


def hull_of_points(pts: np.ndarray, eps: float = EPS_GEOM):
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    pts = dedupe_points(pts, eps)
    if len(pts) == 1:
        return pts[0]
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def chain(points):
        out = []
        for p in points:
            while len(out) >= 2 and orientation(out[-2], out[-1], p, eps) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    ring = lower[:-1] + upper[:-1]
    if len(ring) == 2:
        return Segment(ring[0], ring[1])
    return ConvexPolygon(np.array(ring))


def affine_dimension(S: CompactSet, eps: float = EPS_GEOM) -> int:
    """0 if all points coincide, 1 if collinear, 2 otherwise."""
    pts = S.all_points()
    base = pts[0]
    diffs = pts - base
    dists = np.hypot(diffs[:, 0], diffs[:, 1])
    if np.all(dists <= eps):
        return 0
    u = diffs[np.argmax(dists)]
    u = u / np.hypot(*u)
    # perpendicular distance to the line through base with direction u
    perp = np.abs(diffs[:, 0] * u[1] - diffs[:, 1] * u[0])
    scale = 1.0 + float(np.max(dists))
    if np.all(perp <= eps * scale):
        return 1
    return 2


def _sum_pair(p, q, eps: float):
    """Minkowski sum of two primitives, as a single primitive."""
    p_is_pt = isinstance(p, np.ndarray)
    q_is_pt = isinstance(q, np.ndarray)
    if p_is_pt and q_is_pt:
        return p + q
    if p_is_pt or q_is_pt:
        pt, other = (p, q) if p_is_pt else (q, p)
        if isinstance(other, Segment):
            return Segment(other.a + pt, other.b + pt)
        return ConvexPolygon(other.vertices + pt)
    if isinstance(p, Segment) and isinstance(q, Segment):
        sums = np.array([p.a + q.a, p.a + q.b, p.b + q.a, p.b + q.b])
        return hull_of_points(sums, eps)
    # at least one polygon: hull of vertexwise sums
    P, Q = _primitive_points(p), _primitive_points(q)
    sums = np.array([a + b for a in P for b in Q])
    return hull_of_points(sums, eps)


def _primitive_key(prim, eps: float):
    if isinstance(prim, Segment):
        a, b = prim.a, prim.b
        if (a[0], a[1]) > (b[0], b[1]):
            a, b = b, a
        return ("seg", tuple(np.round(np.concatenate([a, b]) / eps).astype(np.int64)))
    if isinstance(prim, ConvexPolygon):
        v = prim.vertices
        i0 = np.lexsort((v[:, 1], v[:, 0]))[0]
        v = np.roll(v, -i0, axis=0)
        return ("poly", tuple(np.round(v.ravel() / eps).astype(np.int64)))
    return ("pt", tuple(np.round(prim / eps).astype(np.int64)))


def minkowski_sum(A: CompactSet, B: CompactSet, eps: float = EPS_GEOM) -> CompactSet:
    """Primitive-pairwise Minkowski sum with duplicate merging."""
    prims = []
    seen = set()
    for p in A.primitives:
        for q in B.primitives:
            s = _sum_pair(p, q, eps)
            key = _primitive_key(s, eps)
            if key not in seen:
                seen.add(key)
                prims.append(s)
    return CompactSet(tuple(prims))


def set_average(A: CompactSet, m: int, eps: float = EPS_GEOM) -> CompactSet:
    """(A + ... + A)/m with m summands; finite point sets only, m in {1, 2, 3}."""
    if not A.is_points_only():
        raise UnsupportedPrimitive("set_average requires a finite point set")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidInput("m must be a positive integer")
    if m > 3:
        raise MTooLarge("set averages supported only for m <= 3")
    pts = A.point_array()
    sums = [sum(combo) / m for combo in itertools.combinations_with_replacement(pts, m)]
    return CompactSet.from_points(dedupe_points(np.array(sums), eps))


def point_on_segment(x, a, b, tol: float) -> bool:
    x, a, b = as_point(x), as_point(a), as_point(b)
    d = b - a
    L = np.hypot(*d)
    if L == 0:
        return bool(np.hypot(*(x - a)) <= tol)
    t = np.clip(np.dot(x - a, d) / (L * L), 0.0, 1.0)
    return bool(np.hypot(*(x - (a + t * d))) <= tol)


def point_in_convex_polygon(x, P, tol: float = EPS_GEOM) -> str:
    """Classify x against a hull (polygon, segment, or point) with slack tol."""
    x = as_point(x)
    if isinstance(P, ConvexPolygon):
        v = P.vertices
        nxt = np.roll(v, -1, axis=0)
        e = nxt - v
        lens = np.hypot(e[:, 0], e[:, 1])
        # signed distance to each edge line, positive on the interior side
        sd = (e[:, 0] * (x[1] - v[:, 1]) - e[:, 1] * (x[0] - v[:, 0])) / lens
        m = float(np.min(sd))
        if m < -tol:
            return OUTSIDE
        if m <= tol:
            return BOUNDARY
        return INSIDE
    if isinstance(P, Segment):
        return BOUNDARY if point_on_segment(x, P.a, P.b, tol) else OUTSIDE
    p = as_point(P)
    return BOUNDARY if np.hypot(*(x - p)) <= tol else OUTSIDE


def polygon_signed_distance(x, P: ConvexPolygon) -> float:
    """min over edges of the signed edge-line distance (positive inside)."""
    v = P.vertices
    nxt = np.roll(v, -1, axis=0)
    e = nxt - v
    lens = np.hypot(e[:, 0], e[:, 1])
    x = as_point(x)
    sd = (e[:, 0] * (x[1] - v[:, 1]) - e[:, 1] * (x[0] - v[:, 0])) / lens
    return float(np.min(sd))


def hull_to_set(hull) -> CompactSet:
    """Wrap a convex_hull result back into a CompactSet."""
    return CompactSet((hull,))
