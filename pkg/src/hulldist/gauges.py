"""Symmetric norms ("gauges"): l_p norms, polygonal Minkowski functionals, ellipses.

Every gauge exposes ``norm`` (scalar), ``norms`` (batched, dispatched to the
active kernel backend), and ``kernel_params`` so hot loops can run without
re-deriving facet data.  Gauges are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import InvalidInput, NotSymmetric, ZeroDirection
from .geometry import EPS_GEOM, ConvexPolygon, as_point

KIND_LP = 0
KIND_POLYTOPE = 1
KIND_ELLIPSE = 2

_DUMMY = np.zeros((1, 2))
_EYE = np.eye(2)


@dataclass(frozen=True)
class GaugeTraits:
    strictly_convex: bool
    smooth_boundary: bool


class Gauge:
    """Base class; concrete gauges fill in kernel parameters."""

    kind: int

    def kernel_params(self):
        raise NotImplementedError

    def norm(self, v) -> float:
        v = np.asarray(v, dtype=float).reshape(1, 2)
        return float(self.norms(v)[0])

    def norms(self, V: np.ndarray) -> np.ndarray:
        kind, p, H, Minv = self.kernel_params()
        return backend.kernels().norms(np.ascontiguousarray(V, dtype=float), kind, p, H, Minv)

    def traits(self) -> GaugeTraits:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class LpGauge(Gauge):
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p < 1.0:
            raise InvalidInput(f"l_p gauge requires 1 <= p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "kind", KIND_LP)

    def kernel_params(self):
        return KIND_LP, self.p, _DUMMY, _EYE

    def traits(self) -> GaugeTraits:
        smooth = self.p > 1.0
        return GaugeTraits(strictly_convex=smooth, smooth_boundary=smooth)

    def to_json(self) -> dict:
        return {"type": "lp", "p": self.p}


@dataclass(frozen=True)
class PolytopeGauge(Gauge):
    """Minkowski functional of an origin-symmetric convex polygon.

    Facet functionals h_i (rows of H) satisfy K = {x : h_i . x <= 1}, so the
    norm is max_i h_i . x.  They are precomputed once: the norm is the hot
    path of branch-and-bound.
    """

    polygon: ConvexPolygon

    def __post_init__(self):
        K = self.polygon
        if not isinstance(K, ConvexPolygon):
            K = ConvexPolygon(np.asarray(K, dtype=float))
            object.__setattr__(self, "polygon", K)
        v = K.vertices
        scale = float(np.max(np.abs(v))) + 1.0
        for p in v:
            if not np.any(np.hypot(v[:, 0] + p[0], v[:, 1] + p[1]) <= EPS_GEOM * scale):
                raise NotSymmetric("polytope gauge requires vertices closed under negation")
        nxt = np.roll(v, -1, axis=0)
        e = nxt - v
        n = np.stack([e[:, 1], -e[:, 0]], axis=1)  # outward normals (ccw interior on the left)
        c = np.sum(n * v, axis=1)
        if np.any(c <= EPS_GEOM * scale):
            raise InvalidInput("origin must be strictly interior to the polytope")
        H = n / c[:, None]
        # store exact +/- functional pairs so the norm is bit-exact symmetric
        half = H[: len(H) // 2]
        object.__setattr__(self, "_H", np.ascontiguousarray(np.vstack([half, -half])))
        object.__setattr__(self, "kind", KIND_POLYTOPE)

    def kernel_params(self):
        return KIND_POLYTOPE, 0.0, self._H, _EYE

    def traits(self) -> GaugeTraits:
        return GaugeTraits(strictly_convex=False, smooth_boundary=False)

    def to_json(self) -> dict:
        return {"type": "polytope", "vertices": self.polygon.vertices.tolist()}


@dataclass(frozen=True)
class EllipseGauge(Gauge):
    """Unit ball {M u : |u|_2 <= 1}; the norm is |M^-1 x|_2."""

    M: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.M, dtype=float).reshape(2, 2)
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if not np.isfinite(det) or det <= 0:
            raise InvalidInput("ellipse matrix must have positive determinant")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "_Minv", np.ascontiguousarray(np.linalg.inv(M)))
        object.__setattr__(self, "kind", KIND_ELLIPSE)

    def kernel_params(self):
        return KIND_ELLIPSE, 0.0, _DUMMY, self._Minv

    def traits(self) -> GaugeTraits:
        return GaugeTraits(strictly_convex=True, smooth_boundary=True)

    def to_json(self) -> dict:
        return {"type": "ellipse", "matrix": self.M.tolist()}


def lp(p: float) -> LpGauge:
    return LpGauge(p)


L1 = lp(1.0)
L2 = lp(2.0)


def square_gauge(half_width: float = 1.0) -> PolytopeGauge:
    h = float(half_width)
    return PolytopeGauge(ConvexPolygon(np.array([[h, -h], [h, h], [-h, h], [-h, -h]])))


def gauge_norm(v, g: Gauge) -> float:
    return g.norm(v)


def gauge_traits(g: Gauge) -> GaugeTraits:
    return g.traits()


def boundary_point(g: Gauge, u, center=(0.0, 0.0), radius: float = 1.0) -> np.ndarray:
    """Point of the radius-scaled ball boundary at ``center`` in direction u."""
    u = as_point(u)
    if radius <= 0:
        raise InvalidInput("radius must be positive")
    n = g.norm(u)
    if n == 0.0:
        raise ZeroDirection("direction must be nonzero")
    return as_point(center) + (radius / n) * u


def gauge_from_json(obj: dict) -> Gauge:
    """Parse the published gauge schema; rejects p = inf."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise InvalidInput("gauge JSON must be an object with a 'type' field")
    t = obj["type"]
    if t == "lp":
        p = obj.get("p")
        if isinstance(p, str) or p is None:
            raise InvalidInput(f"l_p gauge requires a finite numeric p, got {p!r}")
        return LpGauge(float(p))
    if t == "polytope":
        return PolytopeGauge(ConvexPolygon(np.asarray(obj["vertices"], dtype=float)))
    if t == "ellipse":
        return EllipseGauge(np.asarray(obj["matrix"], dtype=float))
    raise InvalidInput(f"unknown gauge type {t!r}")
