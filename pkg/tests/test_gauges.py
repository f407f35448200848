import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hulldist.errors import InvalidInput, NotSymmetric, ZeroDirection
from hulldist.gauges import (
    EllipseGauge,
    LpGauge,
    PolytopeGauge,
    boundary_point,
    gauge_from_json,
    gauge_norm,
    gauge_traits,
    lp,
    square_gauge,
)
from hulldist.geometry import ConvexPolygon


def hexagon():
    ang = np.arange(6) * np.pi / 3
    return PolytopeGauge(ConvexPolygon(np.stack([np.cos(ang), np.sin(ang)], axis=1)))


ALL_GAUGES = [
    lp(1.0),
    lp(1.5),
    lp(2.0),
    lp(3.0),
    square_gauge(),
    hexagon(),
    EllipseGauge(np.array([[2.0, 0.0], [0.0, 1.0]])),
    EllipseGauge(np.array([[1.0, 0.5], [0.0, 1.0]])),
]


class TestNorm:
    def test_l1_corner(self):
        assert gauge_norm((1, 1), lp(1)) == pytest.approx(2.0)

    def test_square_corner_of_ball(self):
        assert gauge_norm((1, 1), square_gauge()) == pytest.approx(1.0)

    def test_ellipse_identity_is_l2(self):
        g = EllipseGauge(np.eye(2))
        assert gauge_norm((3, 4), g) == pytest.approx(5.0)

    def test_zero_vector(self):
        for g in ALL_GAUGES:
            assert gauge_norm((0, 0), g) == 0.0

    def test_homogeneity(self):
        rng = np.random.default_rng(0)
        for g in ALL_GAUGES:
            for _ in range(20):
                v = rng.normal(size=2)
                s = rng.uniform(0.1, 10)
                assert gauge_norm(s * v, g) == pytest.approx(s * gauge_norm(v, g), rel=1e-12)


class TestBoundaryPoint:
    def test_l2_axis(self):
        assert np.allclose(boundary_point(lp(2), (1, 0), (0, 0), 2.0), (2, 0))

    def test_l1_diagonal(self):
        assert np.allclose(boundary_point(lp(1), (1, 1), (0, 0), 1.0), (0.5, 0.5))

    def test_square_shifted(self):
        # solve max(|x|,|y|)=1 along the ray (2,1), then shift by the center
        got = boundary_point(square_gauge(), (2, 1), (1, 1), 1.0)
        assert np.allclose(got, (2.0, 1.5))

    def test_result_on_ball_boundary(self):
        rng = np.random.default_rng(1)
        for g in ALL_GAUGES:
            for _ in range(10):
                u = rng.normal(size=2)
                c = rng.normal(size=2)
                r = rng.uniform(0.5, 3)
                x = boundary_point(g, u, c, r)
                assert gauge_norm(x - c, g) == pytest.approx(r, abs=1e-9)

    def test_zero_direction(self):
        with pytest.raises(ZeroDirection):
            boundary_point(lp(2), (0, 0))


class TestTraits:
    def test_lp_smooth_strictly_convex_iff_p_gt_1(self):
        t = gauge_traits(lp(1.5))
        assert t.strictly_convex and t.smooth_boundary
        t = gauge_traits(lp(1))
        assert not t.strictly_convex and not t.smooth_boundary

    def test_polytope_neither(self):
        t = gauge_traits(hexagon())
        assert not t.strictly_convex and not t.smooth_boundary

    def test_ellipse_both(self):
        t = gauge_traits(EllipseGauge(np.array([[2.0, 1.0], [0.0, 1.0]])))
        assert t.strictly_convex and t.smooth_boundary


class TestValidation:
    def test_p_below_one_rejected(self):
        with pytest.raises(InvalidInput):
            lp(0.5)

    def test_p_infinity_rejected(self):
        with pytest.raises(InvalidInput):
            lp(float("inf"))
        with pytest.raises(InvalidInput):
            gauge_from_json({"type": "lp", "p": "inf"})

    def test_asymmetric_polytope_rejected(self):
        with pytest.raises(NotSymmetric):
            PolytopeGauge(ConvexPolygon(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])))

    def test_ellipse_needs_positive_det(self):
        with pytest.raises(InvalidInput):
            EllipseGauge(np.array([[1.0, 0.0], [0.0, -1.0]]))

    def test_json_round_trip(self):
        for g in ALL_GAUGES:
            g2 = gauge_from_json(g.to_json())
            v = np.array([0.7, -1.3])
            assert gauge_norm(v, g2) == pytest.approx(gauge_norm(v, g), rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=0, max_value=2**31 - 1),
    st.integers(min_value=0, max_value=len(ALL_GAUGES) - 1),
)
def test_symmetry_exact(seed, gi):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2) * rng.uniform(0.1, 100)
    g = ALL_GAUGES[gi]
    assert gauge_norm(-v, g) == gauge_norm(v, g)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=0, max_value=2**31 - 1),
    st.integers(min_value=0, max_value=len(ALL_GAUGES) - 1),
)
def test_triangle_inequality(seed, gi):
    rng = np.random.default_rng(seed)
    u = rng.normal(size=2) * rng.uniform(0.1, 10)
    v = rng.normal(size=2) * rng.uniform(0.1, 10)
    g = ALL_GAUGES[gi]
    assert gauge_norm(u + v, g) <= gauge_norm(u, g) + gauge_norm(v, g) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_ball_nesting(seed):
    # K1 inside K2 implies the K2 norm is pointwise smaller
    rng = np.random.default_rng(seed)
    inner = square_gauge(1.0)
    outer = square_gauge(1.0 + rng.uniform(0.1, 2.0))
    v = rng.normal(size=2) * rng.uniform(0.1, 10)
    assert gauge_norm(v, outer) <= gauge_norm(v, inner) + 1e-12


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=0, max_value=2**31 - 1),
    st.sampled_from([1.0, 1.5, 2.0, 3.0, 4.0]),
)
def test_clarkson_inequality(seed, p):
    rng = np.random.default_rng(seed)
    u = rng.normal(size=2) * rng.uniform(0.1, 5)
    v = rng.normal(size=2) * rng.uniform(0.1, 5)
    g = lp(p)
    lhs = gauge_norm((u + v) / 2, g) ** p + gauge_norm((u - v) / 2, g) ** p
    rhs = max(2 ** (1 - p), 0.5) * (gauge_norm(u, g) ** p + gauge_norm(v, g) ** p)
    assert lhs <= rhs + 1e-12
