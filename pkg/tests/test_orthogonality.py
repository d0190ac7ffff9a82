"""Tests for orthogonality certificates, the b maps and the support points"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaugeplane.geometry.core import (NonSmoothPoint, SupportNotUnique,
                                      SymplecticForm, ZeroVector,
                                      apply_linear, cross, unit_vector,
                                      validate_polygon)
from gaugeplane.geometry.gauge import (GaugeContext, antipode_p,
                                       dual_gauge_eval, gauge_eval)
from gaugeplane.geometry.generators import rounded
from gaugeplane.geometry.oracle import OracleConfig, orthogonality_grid
from gaugeplane.geometry.orthogonality import (a_minus, a_plus, b_map,
                                               b_minus, b_plus, is_orthogonal,
                                               support_pair,
                                               supporting_direction)

from strategies import (angles, linear_maps, polygons, rounded_polygons,
                        vectors)

FAST_ORACLE = OracleConfig(boundary_samples=2000, t_grid=201)


def test_orthogonality_inequality_orientation(rectangle):
    ctx = GaugeContext(rectangle)
    x, y = np.array([1.5, 0.0]), np.array([0.0, 1.0])
    assert gauge_eval(ctx, x) == pytest.approx(1)
    assert dual_gauge_eval(ctx, y) == pytest.approx(0.5)
    # w(x, y) exceeds g(x) g_w(y); the bound holds for w(y, x)
    assert ctx.form(x, y) > gauge_eval(ctx, x) * dual_gauge_eval(ctx, y)
    ok, witness = is_orthogonal(ctx, x, y)
    assert ok
    assert np.array_equal(witness.y, [0, -1])
    assert witness.equality_residual < 1e-12


def test_not_orthogonal(square_ctx):
    ok, witness = is_orthogonal(square_ctx, (1, 0), (1, 1))
    assert not ok
    assert witness.equality_residual == pytest.approx(0.5)


def test_zero_vectors(square_ctx):
    with pytest.raises(ZeroVector):
        is_orthogonal(square_ctx, (0, 0), (1, 0))
    with pytest.raises(ZeroVector):
        is_orthogonal(square_ctx, (1, 0), (0, 0))
    with pytest.raises(ZeroVector):
        support_pair(square_ctx, (0, 0))


@settings(max_examples=50, deadline=None)
@given(polygons(), vectors(), vectors())
def test_orthogonality_inequality(p, x, y):
    ctx = GaugeContext(p)
    lhs = ctx.form(y, x)
    rhs = gauge_eval(ctx, x) * dual_gauge_eval(ctx, y)
    assert lhs <= rhs + 1e-12 * max(1.0, abs(rhs))


@settings(max_examples=50, deadline=None)
@given(polygons(), angles())
def test_equality_at_b_plus(p, theta):
    ctx = GaugeContext(p)
    x = unit_vector(theta)
    y = b_plus(ctx, x)
    ok, witness = is_orthogonal(ctx, x, y)
    assert ok
    assert witness.equality_residual <= 1e-9
    # equality is attained at y = b-(x), the same line
    assert ctx.form(b_minus(ctx, x), x) == pytest.approx(
        gauge_eval(ctx, x) * dual_gauge_eval(ctx, b_minus(ctx, x)))


def test_orthogonality_agrees_with_grid(triangle_ctx, rounded_square_ctx):
    for ctx in (triangle_ctx, rounded_square_ctx):
        for theta in (0.3, 1.9, 4.0):
            x = unit_vector(theta)
            assert orthogonality_grid(ctx, x, b_plus(ctx, x), FAST_ORACLE)
            assert not orthogonality_grid(ctx, x, x, FAST_ORACLE)


def test_square_b_maps(square_ctx):
    assert np.allclose(b_plus(square_ctx, (1, 0)), [0, 1])
    assert np.allclose(b_minus(square_ctx, (1, 0)), [0, -1])
    assert np.allclose(b_map(square_ctx, (1, 0)), [0, 2])


def test_b_maps_orientation(triangle_ctx):
    x = np.array([1.0, 1.0])
    assert triangle_ctx.form(x, b_plus(triangle_ctx, x)) > 0
    assert triangle_ctx.form(x, b_minus(triangle_ctx, x)) < 0
    assert gauge_eval(triangle_ctx, b_plus(triangle_ctx, x)) == \
        pytest.approx(1)


def test_corner_is_not_smooth(triangle_ctx):
    with pytest.raises(NonSmoothPoint):
        b_plus(triangle_ctx, (1, 0))


def test_straight_vertex_is_smooth(hexagon1):
    ctx = GaugeContext(hexagon1)
    bp, u = supporting_direction(ctx, (0.5, 0.5))
    assert np.allclose(bp.point, [0.5, 0.5])
    assert abs(cross(u, [-1, 1])) < 1e-12
    assert np.allclose(b_plus(ctx, (0.5, 0.5)), b_plus(ctx, (0.6, 0.5)))


def test_disk_b_maps():
    tiny = validate_polygon([(1e-6, 1e-6), (-1e-6, 1e-6), (-1e-6, -1e-6),
                             (1e-6, -1e-6)])
    ctx = GaugeContext(rounded(tiny, 1.0))
    assert np.allclose(b_plus(ctx, (1, 0)), [0, 1], atol=1e-5)
    assert np.allclose(b_minus(ctx, (1, 0)), [0, -1], atol=1e-5)
    assert np.allclose(b_map(ctx, (1, 0)), [0, 2], atol=1e-5)


def test_b_plus_constant_along_edge(square_ctx):
    a = b_plus(square_ctx, (1, -0.5))
    b = b_plus(square_ctx, (1, 0.7))
    assert np.array_equal(a, b)


def test_b_plus_injective_on_arcs(rounded_square_ctx):
    # rays within 0.15 rad of a diagonal meet the arcs
    offsets = np.linspace(-0.15, 0.15, 40)
    theta = np.concatenate([np.pi / 4 + k * np.pi / 2 + offsets
                            for k in range(4)])
    pts = np.array([b_plus(rounded_square_ctx, unit_vector(t))
                    for t in theta])
    gaps = np.hypot(*(pts[:, None, :] - pts[None, :, :]).transpose(2, 0, 1))
    gaps[np.diag_indices(len(pts))] = np.inf
    assert gaps.min() > 1e-6


def test_support_pair_triangle(triangle_ctx):
    lo, hi = support_pair(triangle_ctx, (1, 0))
    assert np.allclose(lo, [-1, -1])
    assert np.allclose(hi, [0, 1])
    assert np.allclose(a_plus(triangle_ctx, (1, 0)), lo)
    assert np.allclose(a_minus(triangle_ctx, (1, 0)), hi)


def test_support_pair_swaps_with_form(triangle):
    ctx = GaugeContext(triangle, SymplecticForm(-1.0))
    lo, hi = support_pair(ctx, (1, 0))
    assert np.allclose(lo, [0, 1])
    assert np.allclose(hi, [-1, -1])


def test_support_pair_not_unique(square_ctx):
    with pytest.raises(SupportNotUnique):
        support_pair(square_ctx, (1, 0))


def test_support_pair_rounded(rounded_square_ctx):
    x = np.array([1.0, 0.2])
    lo, hi = support_pair(rounded_square_ctx, x)
    norm = np.hypot(*x)
    assert cross(x, lo) == pytest.approx(-1.2 - 0.5 * norm)
    assert cross(x, hi) == pytest.approx(1.2 + 0.5 * norm)


@pytest.mark.parametrize('bodies', [polygons(), rounded_polygons()])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_a_plus_of_antipode(bodies, data):
    ctx = GaugeContext(data.draw(bodies))
    x = unit_vector(data.draw(angles()))
    p = antipode_p(ctx, x).point
    assert np.allclose(a_plus(ctx, p), a_minus(ctx, x), atol=1e-12)
    assert np.allclose(a_minus(ctx, p), a_plus(ctx, x), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(polygons(), linear_maps(), angles())
def test_b_maps_follow_linear_maps(p, T, theta):
    mapped = apply_linear(T, p)
    ctx, ctx_t = GaugeContext(p), GaugeContext(mapped.polygon)
    x = unit_vector(theta)
    plus, minus = b_plus(ctx, x), b_minus(ctx, x)
    if mapped.orientation < 0:
        # w(Tx, Ty) = det T w(x, y) flips the sides
        plus, minus = minus, plus
    assert np.allclose(b_plus(ctx_t, T @ x), T @ plus, atol=1e-9)
    assert np.allclose(b_minus(ctx_t, T @ x), T @ minus, atol=1e-9)
