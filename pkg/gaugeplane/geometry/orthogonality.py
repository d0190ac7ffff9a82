"""Orthogonality in a gauge plane and the boundary maps b+, b-, a+, a-

x is orthogonal to y (x -| y) when g(x) <= g(x + t y) for every real t, that
is, when the line through x / g(x) in direction y supports K. For all x, y

    w(y, x) <= g(x) * g_w(y)

with equality exactly when x -| y and w(y, x) >= 0, so `is_orthogonal`
certifies orthogonality by checking that equality for the sign of y that
makes w(y, x) nonnegative.
"""
from dataclasses import dataclass

import numpy as np

from .core import (TOL_ANGLE, TOL_GEOM, ArcLocus, BoundaryPoint, EdgeLocus,
                   NonSmoothPoint, SupportNotUnique, VertexLocus, ZeroVector,
                   as_vec, cross, ray_boundary, rotate90)
from .gauge import dual_gauge_eval, gauge_eval


@dataclass(frozen=True, eq=False)
class OrthogonalityWitness:
    """Certificate of an orthogonality check

    `y` is the signed copy of the queried direction for which w(y, x) >= 0,
    and `equality_residual` is |g(x) g_w(y) - w(y, x)| relative to
    max(1, g(x) g_w(y)).
    """
    x: np.ndarray
    y: np.ndarray
    equality_residual: float
    orthogonal: bool


def _nonzero(v, name):
    v = as_vec(v)
    if not np.any(v):
        raise ZeroVector(f'{name} must be a nonzero vector')
    return v


def to_boundary_point(ctx, x):
    """Pass a BoundaryPoint through, project a vector onto the boundary"""
    if isinstance(x, BoundaryPoint):
        return x
    return ray_boundary(ctx.body, _nonzero(x, 'x'))


def is_orthogonal(ctx, x, y, tol=TOL_GEOM):
    """Test x -| y through the equality case of w(y, x) <= g(x) g_w(y)

    Orthogonality is homogeneous in y, so both signs of y are covered by
    testing the one with w(y, x) >= 0.

    Returns
    -------
    bool, OrthogonalityWitness
        The verdict and its certificate

    Raises
    ------
    ZeroVector
        x or y is the zero vector
    """
    x = _nonzero(x, 'x')
    y = _nonzero(y, 'y')
    y_signed = y if ctx.form(y, x) >= 0 else -y
    lhs = float(ctx.form(y_signed, x))
    rhs = gauge_eval(ctx, x) * dual_gauge_eval(ctx, y_signed)
    residual = abs(rhs - lhs) / max(1.0, abs(rhs))
    witness = OrthogonalityWitness(x, y_signed, residual, residual <= tol)
    return witness.orthogonal, witness


def supporting_direction(ctx, x):
    """Unit direction of the unique supporting line at x / g(x)

    Returns
    -------
    BoundaryPoint, np.ndarray
        The boundary point on the ray through x and the unit tangent there,
        in no particular orientation

    Raises
    ------
    NonSmoothPoint
        x / g(x) is a corner of a polygon
    """
    bp = to_boundary_point(ctx, x)
    locus = bp.locus
    if isinstance(locus, EdgeLocus):
        tangent = ctx.core.edges[locus.index]
    elif isinstance(locus, ArcLocus):
        tangent = np.array([-np.sin(locus.angle), np.cos(locus.angle)])
    elif isinstance(locus, VertexLocus) and ctx.core.straight[locus.index]:
        tangent = ctx.core.edges[locus.index]
    else:
        raise NonSmoothPoint(f'supporting line at vertex {locus.index} is '
                             'not unique')
    return bp, tangent / np.hypot(*tangent)


def oriented_tangent(ctx, x):
    """Unit tangent at x / g(x) oriented so that w(x, u) > 0"""
    bp, u = supporting_direction(ctx, x)
    if ctx.form(bp.point, u) < 0:
        u = -u
    return bp, u


def b_plus(ctx, x):
    """The unique b+(x) on the boundary with x -| b+(x) and w(x, b+(x)) > 0"""
    _, u = oriented_tangent(ctx, x)
    return u / gauge_eval(ctx, u)


def b_minus(ctx, x):
    """The unique b-(x) on the boundary with x -| b-(x) and w(x, b-(x)) < 0"""
    _, u = oriented_tangent(ctx, x)
    return -u / gauge_eval(ctx, -u)


def b_map(ctx, x):
    """b(x) = b+(x) - b-(x), the chord through the origin parallel to the
    supporting line at x / g(x)"""
    _, u = oriented_tangent(ctx, x)
    return u * (1.0 / gauge_eval(ctx, u) + 1.0 / gauge_eval(ctx, -u))


def _check_unique(ctx, direction, i):
    core = ctx.core
    d = direction / np.hypot(*direction)
    for j in (i - 1, i):
        e = core.edges[j] / core.edge_lengths[j]
        if abs(cross(d, e)) <= TOL_ANGLE:
            raise SupportNotUnique(f'direction {direction} is parallel to '
                                   f'edge {j % len(core)}')


def support_pair(ctx, x):
    """Both support points (a+(x), a-(x))

    a+(x) minimizes and a-(x) maximizes z -> w(x, z) over K, so that
    w(a+(x), x) > 0 and w(a-(x), x) < 0.

    Raises
    ------
    SupportNotUnique
        x is parallel to an edge, so a support set is a whole segment
    ZeroVector
        x is the zero vector
    """
    x = _nonzero(x, 'x')
    V = ctx.core.vertices
    vals = ctx.form(x, V)
    i_min = int(np.argmin(vals))
    i_max = int(np.argmax(vals))
    _check_unique(ctx, x, i_min)
    _check_unique(ctx, x, i_max)
    a_lo, a_hi = V[i_min].copy(), V[i_max].copy()
    if ctx.radius > 0:
        g = ctx.form.scale * rotate90(x)
        g = g / np.hypot(*g)
        a_lo -= ctx.radius * g
        a_hi += ctx.radius * g
    return a_lo, a_hi


def a_plus(ctx, x):
    return support_pair(ctx, x)[0]


def a_minus(ctx, x):
    return support_pair(ctx, x)[1]
