"""Tests for polygon validation, areas, rays, Hausdorff distance and linear
maps"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaugeplane.geometry.core import (ArcLocus, EdgeLocus, GeometryError,
                                      NonFiniteValue, NotConvex,
                                      OriginNotInterior, SingularMap,
                                      SymplecticForm, TooFewVertices,
                                      VertexLocus, ZeroDirection,
                                      apply_linear, area, cross,
                                      hausdorff_distance, inradius, omega,
                                      perimeter, ray_boundary, signed_area,
                                      support, validate_polygon,
                                      vertex_deviation)
from gaugeplane.geometry.gauge import GaugeContext, gauge_eval
from gaugeplane.geometry.generators import hexagon, rounded

from strategies import linear_maps, polygons, rounded_polygons, vectors


def test_validate_reorders_clockwise():
    cw = [(1, 1), (1, -1), (-1, -1), (-1, 1)]
    p = validate_polygon(cw)
    assert signed_area(p.vertices) == pytest.approx(4)
    assert np.array_equal(p.vertices[0], [1, 1])


@pytest.mark.parametrize('vertices,error', [
    ([(1, 0), (0, 1)], TooFewVertices),
    ([(1, 1), (0, 0.2), (-1, 1), (-1, -1), (1, -1)], NotConvex),
    ([(1, 1), (1, 1), (-1, 1), (-1, -1)], NotConvex),
    ([(2, 1), (3, 1), (3, 2), (2, 2)], OriginNotInterior),
    ([(1, 0), (0, 1), (-1, 0)], OriginNotInterior),
    ([(1, 0), (-1, 0), (2, 0)], NotConvex),
    ([(1, 0), (0, np.inf), (-1, -1)], NonFiniteValue),
])
def test_validate_rejects(vertices, error):
    with pytest.raises(error):
        validate_polygon(vertices)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        validate_polygon([(2, 1), (3, 1), (3, 2)])


def test_straight_vertex_accepted():
    p = hexagon(1.0)
    # F = (0.5, 0.5) lies on segment AE
    assert np.allclose(p.vertices[5], [0.5, 0.5])
    assert p.straight[5]
    assert not p.straight[:5].any()


def test_omega():
    assert omega(SymplecticForm(1), (1, 0), (0, 1)) == 1
    assert omega(SymplecticForm(1), (2, 3), (2, 3)) == 0
    assert omega(SymplecticForm(2), (1, 1), (3, 0)) == -6


scales = st.floats(min_value=-4, max_value=4).filter(lambda s: abs(s) > 1e-3)
coefs = st.floats(min_value=-3, max_value=3)


@settings(max_examples=100, deadline=None)
@given(scales, vectors(), vectors(), vectors(), coefs, coefs)
def test_omega_bilinear_antisymmetric(s, u, v, w, a, b):
    form = SymplecticForm(s)
    assert omega(form, u, v) == -omega(form, v, u)
    assert omega(form, u, u) == 0
    lhs = omega(form, a * u + b * w, v)
    rhs = a * omega(form, u, v) + b * omega(form, w, v)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)
    assert omega(form, u, v) == pytest.approx(s * omega(SymplecticForm(1),
                                                        u, v), rel=1e-12)


def test_square_measures(square):
    assert area(square) == pytest.approx(4)
    assert perimeter(square) == pytest.approx(8)
    assert inradius(square) == pytest.approx(1)
    assert area(square, SymplecticForm(-2.5)) == pytest.approx(10)


def test_hexagon_area():
    for alpha in (1, 3, 10, 50):
        assert area(hexagon(alpha)) == pytest.approx(alpha + 1.5)


def test_rounded_area_steiner(square):
    eps = 0.5
    expected = 4 + 8 * eps + math.pi * eps ** 2
    assert area(rounded(square, eps)) == pytest.approx(expected)


def test_support(square, rounded_square):
    u = np.array([1.0, 0.0])
    assert support(square, u) == pytest.approx(1)
    assert support(rounded_square, u) == pytest.approx(1.5)


def test_ray_boundary_square(square):
    bp = ray_boundary(square, (2, 1))
    assert np.allclose(bp.point, [1, 0.5])
    assert bp.locus.index == 3
    assert bp.locus.t == pytest.approx(0.75)

    bp = ray_boundary(square, (3, 3))
    assert np.allclose(bp.point, [1, 1])
    assert bp.locus == VertexLocus(0)


def test_ray_boundary_rounded_arc(rounded_square):
    bp = ray_boundary(rounded_square, (1, 1))
    assert np.hypot(*bp.point) == pytest.approx(math.sqrt(2) + 0.5)
    assert isinstance(bp.locus, ArcLocus)
    assert bp.locus.index == 0
    assert bp.locus.angle == pytest.approx(math.pi / 4)


def test_ray_boundary_rounded_edge(rounded_square):
    bp = ray_boundary(rounded_square, (1, 0.2))
    assert isinstance(bp.locus, EdgeLocus)
    assert bp.point[0] == pytest.approx(1.5)


def test_ray_boundary_zero(square):
    with pytest.raises(ZeroDirection):
        ray_boundary(square, (0, 0))


@pytest.mark.parametrize('bodies', [polygons(), rounded_polygons()])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_ray_boundary_on_gauge_sphere(bodies, data):
    body = data.draw(bodies)
    d = data.draw(vectors())
    q = ray_boundary(body, d).point
    assert gauge_eval(GaugeContext(body), q) == pytest.approx(1, rel=1e-9)
    assert abs(cross(q, d)) <= 1e-9 * np.hypot(*q) * np.hypot(*d)
    assert np.dot(q, d) > 0


def test_hausdorff(square):
    big = validate_polygon(2 * square.vertices)
    assert hausdorff_distance(square, big) == pytest.approx(math.sqrt(2))
    assert hausdorff_distance(square, square) == 0
    assert hausdorff_distance(square, rounded(square, 0.1)) == \
        pytest.approx(0.1)
    assert hausdorff_distance(rounded(square, 0.3),
                              rounded(square, 0.1)) == pytest.approx(0.2)


def test_rounding_adds_radii(square):
    assert rounded(rounded(square, 0.1), 0.2).radius == pytest.approx(0.3)


@settings(max_examples=50, deadline=None)
@given(polygons())
def test_hausdorff_symmetric(p):
    q = validate_polygon(1.1 * p.vertices)
    assert hausdorff_distance(p, q) == pytest.approx(hausdorff_distance(q, p))


@settings(max_examples=50, deadline=None)
@given(polygons(), polygons(), polygons())
def test_hausdorff_triangle_inequality(k, l, m):
    assert hausdorff_distance(k, m) <= \
        hausdorff_distance(k, l) + hausdorff_distance(l, m) + 1e-12


def test_apply_linear_reflection(triangle):
    mapped = apply_linear(np.diag([1, -1]), triangle)
    assert mapped.det == pytest.approx(-1)
    assert mapped.orientation == -1
    assert signed_area(mapped.polygon.vertices) > 0


def test_apply_linear_singular(square):
    with pytest.raises(SingularMap):
        apply_linear([[1, 2], [2, 4]], square)
    with pytest.raises(GeometryError):
        apply_linear([[1, 0, 0], [0, 1, 0]], square)


@settings(max_examples=50, deadline=None)
@given(polygons(), linear_maps())
def test_apply_linear_area(p, T):
    mapped = apply_linear(T, p)
    assert area(mapped.polygon) == pytest.approx(
        abs(np.linalg.det(T)) * area(p))


def test_vertex_deviation_cyclic(square):
    shifted = validate_polygon(np.roll(square.vertices, 2, axis=0))
    assert vertex_deviation(square, shifted) == 0
    assert vertex_deviation(square, hexagon(1.0)) == math.inf
