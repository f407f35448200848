import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hulldist.errors import InvalidInput, MTooLarge, UnsupportedPrimitive
from hulldist.geometry import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    CompactSet,
    ConvexPolygon,
    Segment,
    ToleranceConfig,
    affine_dimension,
    convex_hull,
    dedupe_points,
    minkowski_sum,
    point_in_convex_polygon,
    set_average,
)


def pts(*coords):
    return CompactSet.from_points(np.array(coords, dtype=float))


def hull_vertices(h):
    if isinstance(h, ConvexPolygon):
        return h.vertices
    if isinstance(h, Segment):
        return h.points()
    return h.reshape(1, 2)


def same_vertex_set(u, v, tol=1e-9):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if len(u) != len(v):
        return False
    used = set()
    for p in u:
        found = None
        for i, q in enumerate(v):
            if i not in used and np.hypot(*(p - q)) <= tol:
                found = i
                break
        if found is None:
            return False
        used.add(found)
    return True


class TestConvexHull:
    def test_triangle_points_already_extreme(self):
        h = convex_hull(pts((0, 0), (2, 0), (0, 2)))
        assert isinstance(h, ConvexPolygon)
        assert same_vertex_set(h.vertices, [(0, 0), (2, 0), (0, 2)])

    def test_collinear_becomes_segment(self):
        h = convex_hull(pts((0, 0), (1, 0), (2, 0)))
        assert isinstance(h, Segment)
        assert same_vertex_set(h.points(), [(0, 0), (2, 0)])

    def test_interior_point_absorbed(self):
        h = convex_hull(pts((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
        assert same_vertex_set(h.vertices, [(0, 0), (2, 0), (2, 2), (0, 2)])

    def test_single_point(self):
        h = convex_hull(pts((3, 3)))
        assert np.allclose(h, [3, 3])

    def test_idempotent(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            S = CompactSet.from_points(rng.uniform(-3, 3, (8, 2)))
            h1 = convex_hull(S)
            h2 = convex_hull(CompactSet.from_points(hull_vertices(h1)))
            assert same_vertex_set(hull_vertices(h1), hull_vertices(h2))

    def test_counterclockwise(self):
        h = convex_hull(pts((0, 0), (2, 0), (0, 2), (2, 2)))
        v = h.vertices
        area = 0.5 * np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
        assert area > 0


class TestAffineDimension:
    def test_point(self):
        assert affine_dimension(pts((3, 3))) == 0

    def test_collinear(self):
        assert affine_dimension(pts((0, 0), (5, 0), (2, 0))) == 1

    def test_triangle(self):
        assert affine_dimension(pts((0, 0), (1, 0), (0, 1))) == 2

    def test_duplicates_are_dim_zero(self):
        assert affine_dimension(pts((1, 1), (1, 1))) == 0


class TestMinkowskiSum:
    def test_rectangle_vertex_set(self):
        # two orthogonal 2-point sets sum to the vertex set of a rectangle
        s = minkowski_sum(pts((0, 0), (2, 0)), pts((0, 0), (0, 2)))
        assert same_vertex_set(s.point_array(), [(0, 0), (2, 0), (0, 2), (2, 2)])

    def test_identity_element(self):
        A = pts((1, 2), (3, 4), (-1, 0))
        s = minkowski_sum(A, pts((0, 0)))
        assert same_vertex_set(s.point_array(), A.point_array())

    def test_two_segments_make_square(self):
        s = minkowski_sum(
            CompactSet((Segment((0, 0), (1, 0)),)), CompactSet((Segment((0, 0), (0, 1)),))
        )
        assert len(s.primitives) == 1
        poly = s.primitives[0]
        assert isinstance(poly, ConvexPolygon)
        assert same_vertex_set(poly.vertices, [(0, 0), (1, 0), (1, 1), (0, 1)])

    def test_parallel_segments_sum_to_segment(self):
        s = minkowski_sum(
            CompactSet((Segment((0, 0), (1, 0)),)), CompactSet((Segment((0, 0), (2, 0)),))
        )
        assert isinstance(s.primitives[0], Segment)

    def test_commutative(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            A = CompactSet.from_points(rng.uniform(-2, 2, (4, 2)))
            B = CompactSet.from_points(rng.uniform(-2, 2, (3, 2)))
            ab = np.sort(minkowski_sum(A, B).point_array(), axis=0)
            ba = np.sort(minkowski_sum(B, A).point_array(), axis=0)
            assert np.allclose(ab, ba)

    def test_hull_of_sum_is_sum_of_hulls(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            A = CompactSet.from_points(rng.uniform(-2, 2, (5, 2)))
            B = CompactSet.from_points(rng.uniform(-2, 2, (5, 2)))
            h1 = convex_hull(minkowski_sum(A, B))
            hA = CompactSet.from_points(hull_vertices(convex_hull(A)))
            hB = CompactSet.from_points(hull_vertices(convex_hull(B)))
            h2 = convex_hull(minkowski_sum(hA, hB))
            assert same_vertex_set(hull_vertices(h1), hull_vertices(h2), tol=1e-8)

    def test_dimension_monotone(self):
        A = pts((0, 0), (1, 0))
        B = pts((0, 0), (0, 1))
        assert affine_dimension(minkowski_sum(A, B)) >= max(
            affine_dimension(A), affine_dimension(B)
        )


class TestSetAverage:
    def test_midpoint_appears(self):
        s = set_average(pts((0, 0), (2, 0)), 2)
        assert same_vertex_set(s.point_array(), [(0, 0), (1, 0), (2, 0)])

    def test_singleton_fixed(self):
        s = set_average(pts((4, -1)), 3)
        assert same_vertex_set(s.point_array(), [(4, -1)])

    def test_triangle_average_brute_force(self):
        # oracle: enumerate all pairwise averages directly
        P = np.array([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)])
        expected = dedupe_points(
            np.array([(a + b) / 2 for a in P for b in P])
        )
        s = set_average(CompactSet.from_points(P), 2)
        assert len(expected) == 6
        assert same_vertex_set(s.point_array(), expected)

    def test_m_one_is_identity(self):
        A = pts((0, 0), (1, 3), (2, -1))
        assert same_vertex_set(set_average(A, 1).point_array(), A.point_array())

    def test_rejects_mixed_primitives(self):
        A = CompactSet((Segment((0, 0), (1, 0)),))
        with pytest.raises(UnsupportedPrimitive):
            set_average(A, 2)

    def test_rejects_large_m(self):
        with pytest.raises(MTooLarge):
            set_average(pts((0, 0), (1, 0)), 4)


class TestPointInPolygon:
    def setup_method(self):
        self.square = ConvexPolygon(np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]))

    def test_inside(self):
        assert point_in_convex_polygon((1, 1), self.square, 1e-9) == INSIDE

    def test_boundary(self):
        assert point_in_convex_polygon((0, 1), self.square, 1e-9) == BOUNDARY

    def test_outside(self):
        assert point_in_convex_polygon((3, 3), self.square, 1e-9) == OUTSIDE

    def test_segment_membership(self):
        seg = Segment((-1, 0), (1, 0))
        assert point_in_convex_polygon((0, 0), seg, 1e-9) == BOUNDARY
        assert point_in_convex_polygon((0, 1), seg, 1e-9) == OUTSIDE


class TestValidation:
    def test_polygon_requires_ccw(self):
        with pytest.raises(InvalidInput):
            ConvexPolygon(np.array([[0.0, 0.0], [0.0, 2.0], [2.0, 0.0]]))  # clockwise

    def test_polygon_rejects_collinear_vertex(self):
        with pytest.raises(InvalidInput):
            ConvexPolygon(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]))

    def test_segment_rejects_degenerate(self):
        with pytest.raises(InvalidInput):
            Segment((1, 1), (1, 1))

    def test_empty_set_rejected(self):
        with pytest.raises(InvalidInput):
            CompactSet(())

    def test_tolerances_positive(self):
        with pytest.raises(InvalidInput):
            ToleranceConfig(eps_geom=-1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1), st.integers(min_value=3, max_value=9))
def test_hull_contains_all_points(seed, n):
    rng = np.random.default_rng(seed)
    P = rng.uniform(-5, 5, (n, 2))
    h = convex_hull(CompactSet.from_points(P))
    for p in P:
        assert point_in_convex_polygon(p, h, 1e-7) in (INSIDE, BOUNDARY)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_sum_associative_on_point_sets(seed):
    rng = np.random.default_rng(seed)
    A = CompactSet.from_points(rng.uniform(-2, 2, (3, 2)))
    B = CompactSet.from_points(rng.uniform(-2, 2, (3, 2)))
    C = CompactSet.from_points(rng.uniform(-2, 2, (2, 2)))
    left = np.array(sorted(map(tuple, minkowski_sum(minkowski_sum(A, B), C).point_array())))
    right = np.array(sorted(map(tuple, minkowski_sum(A, minkowski_sum(B, C)).point_array())))
    assert len(left) == len(right)
    assert np.allclose(left, right, atol=1e-9)
