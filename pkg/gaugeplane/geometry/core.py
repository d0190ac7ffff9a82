"""Exact planar primitives for gauge bodies

Bodies are stored counterclockwise with the origin strictly inside. Edge i
runs from vertex i to vertex i + 1; its outward normal is n_i = (e_y, -e_x)
and its offset is c_i = <n_i, v_i> > 0, so that a polygon is the set
{x : <n_i, x> <= c_i for every i}.

A `RoundedPolygon` is the Minkowski sum of a core polygon with a disk of
radius eps. Its boundary alternates between arcs around the core vertices and
copies of the core edges pushed out by eps along their unit normals.
"""
import math
from dataclasses import dataclass

import numpy as np

TOL_GEOM = 1e-9
TOL_DEGENERATE = 1e-12
TOL_ANGLE = 1e-10
TWO_PI = 2 * math.pi


class GeometryError(ValueError):
    """Invalid geometric input or an undefined construction"""


class NotConvex(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class TooFewVertices(GeometryError):
    pass


class ZeroDirection(GeometryError):
    pass


class ZeroVector(GeometryError):
    pass


class SingularMap(GeometryError):
    pass


class DegenerateSystem(GeometryError):
    pass


class NonSmoothPoint(GeometryError):
    pass


class SupportNotUnique(GeometryError):
    pass


class NonPositiveAlpha(GeometryError):
    pass


class DegenerateSample(GeometryError):
    pass


class NoSignChangeFound(GeometryError):
    pass


class NonFiniteValue(GeometryError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the geometry kernels

    Parameters
    ----------
    geom : float
        Absolute tolerance for boundary membership and constraint checks
    degenerate : float
        Threshold on normalized cross products for collinearity and
        origin-on-boundary detection
    angle : float
        Angular distance (radians) below which a direction counts as parallel
        to an edge
    """
    geom: float = TOL_GEOM
    degenerate: float = TOL_DEGENERATE
    angle: float = TOL_ANGLE


DEFAULT_TOLERANCES = Tolerances()


def as_vec(v):
    """Coerce input to a finite float array of shape (2,)"""
    arr = np.array(v, dtype=float)
    if arr.shape != (2,):
        raise GeometryError(f'expected a 2-vector, got shape {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f'non-finite vector component in {arr}')
    return arr


def cross(u, v):
    """z-component of the cross product, broadcasting over leading axes"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def rotate90(v):
    """Rotate counterclockwise by a quarter turn"""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def unit_vector(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def angle_of(v):
    """Polar angle in [0, 2*pi)"""
    v = np.asarray(v, dtype=float)
    return np.mod(np.arctan2(v[..., 1], v[..., 0]), TWO_PI)


@dataclass(frozen=True)
class SymplecticForm:
    """The area form omega(u, v) = scale * (u_x v_y - u_y v_x)"""
    scale: float = 1.0

    def __post_init__(self):
        s = float(self.scale)
        if not math.isfinite(s) or s == 0:
            raise GeometryError('symplectic scale must be finite and nonzero')
        object.__setattr__(self, 'scale', s)

    def __call__(self, u, v):
        return self.scale * cross(u, v)

    @property
    def sign(self):
        return 1.0 if self.scale > 0 else -1.0


STANDARD_FORM = SymplecticForm(1.0)


def omega(form, u, v):
    """Evaluate the symplectic form on a pair of vectors"""
    return form(u, v)


class ConvexPolygon(object):
    def __init__(self, vertices):
        """Counterclockwise convex polygon containing the origin

        Use `validate_polygon` to build one from untrusted vertices; the
        constructor assumes they are already validated.

        Parameters
        ----------
        vertices : array-like, shape (n, 2)
            Vertices in counterclockwise order
        """
        v = np.array(vertices, dtype=float)
        edges = np.roll(v, -1, axis=0) - v
        normals = np.column_stack([edges[:, 1], -edges[:, 0]])
        lengths = np.hypot(edges[:, 0], edges[:, 1])

        self.vertices = v
        self.edges = edges
        self.normals = normals
        self.offsets = np.einsum('ij,ij->i', normals, v)
        self.edge_lengths = lengths
        self.unit_normals = normals / lengths[:, None]
        self.straight = _straight_vertices(v)
        for arr in (self.vertices, self.edges, self.normals, self.offsets,
                    self.edge_lengths, self.unit_normals, self.straight):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f'ConvexPolygon(n_vertices={len(self)})'

    @property
    def radius(self):
        return 0.0

    @property
    def core(self):
        return self


class RoundedPolygon(object):
    def __init__(self, core, radius):
        """Minkowski sum of a convex polygon with a disk of radius `radius`

        Parameters
        ----------
        core : ConvexPolygon
            Validated core polygon
        radius : float
            Rounding radius eps >= 0. Zero gives back the core polygon
        """
        if not isinstance(core, ConvexPolygon):
            raise GeometryError('core of a rounded polygon must be a '
                                'ConvexPolygon')
        radius = float(radius)
        if not math.isfinite(radius) or radius < 0:
            raise GeometryError(f'rounding radius must be finite and >= 0, '
                                f'got {radius}')
        self.core = core
        self.radius = radius

    def __len__(self):
        return len(self.core)

    def __repr__(self):
        return (f'RoundedPolygon(n_vertices={len(self)}, '
                f'radius={self.radius!r})')

    @property
    def vertices(self):
        return self.core.vertices

    def junctions(self):
        """Boundary points where an arc meets an edge, in boundary order

        Returns
        -------
        np.ndarray, shape (2n, 2)
            For each vertex i, the start of arc i followed by its end
        """
        v = self.core.vertices
        m = self.core.unit_normals
        m_prev = np.roll(m, 1, axis=0)
        out = np.empty((2 * len(v), 2))
        out[0::2] = v + self.radius * m_prev
        out[1::2] = v + self.radius * m
        return out


def is_polygonal(body):
    """True when the body has no rounded arcs"""
    return isinstance(body, ConvexPolygon) or body.radius == 0


@dataclass(frozen=True)
class EdgeLocus:
    index: int
    t: float


@dataclass(frozen=True)
class VertexLocus:
    index: int


@dataclass(frozen=True)
class ArcLocus:
    index: int
    angle: float


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A point of the boundary together with the element it lies on"""
    point: np.ndarray
    locus: object


def _straight_vertices(v):
    prev = v - np.roll(v, 1, axis=0)
    nxt = np.roll(v, -1, axis=0) - v
    norms = np.hypot(prev[:, 0], prev[:, 1]) * np.hypot(nxt[:, 0], nxt[:, 1])
    with np.errstate(divide='ignore', invalid='ignore'):
        sin = cross(prev, nxt) / norms
    return np.abs(sin) <= TOL_DEGENERATE


def signed_area(vertices):
    """Shoelace signed area, positive for counterclockwise order"""
    v = np.asarray(vertices, dtype=float)
    w = np.roll(v, -1, axis=0)
    return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]))


def validate_polygon(vertices, tol=DEFAULT_TOLERANCES):
    """Validate vertices as a convex polygon with the origin in its interior

    Clockwise input is reordered to counterclockwise, keeping the first
    vertex. Straight vertices (collinear with both neighbours and continuing
    in the same direction) are kept; they are smooth boundary points.

    Parameters
    ----------
    vertices : array-like, shape (n, 2)
        Polygon vertices in either orientation
    tol : Tolerances, optional
        Degeneracy thresholds, by default DEFAULT_TOLERANCES

    Returns
    -------
    ConvexPolygon
        The validated polygon

    Raises
    ------
    TooFewVertices
        Fewer than three vertices
    NotConvex
        Repeated vertex, reflex vertex, backtracking collinear triple, or
        vertices that wind around more than once
    OriginNotInterior
        The origin is on the boundary or outside
    """
    v = np.array(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise GeometryError('vertices must be a list of (x, y) pairs')
    if len(v) < 3:
        raise TooFewVertices(f'a polygon needs at least 3 vertices, '
                             f'got {len(v)}')
    if not np.all(np.isfinite(v)):
        raise NonFiniteValue('vertex coordinates must be finite')

    if signed_area(v) < 0:
        v = np.concatenate([v[:1], v[:0:-1]])

    prev = v - np.roll(v, 1, axis=0)
    nxt = np.roll(v, -1, axis=0) - v
    len_prev = np.hypot(prev[:, 0], prev[:, 1])
    len_next = np.hypot(nxt[:, 0], nxt[:, 1])
    scale = max(1.0, float(np.abs(v).max()))
    if np.any(len_next <= tol.degenerate * scale):
        i = int(np.argmin(len_next))
        raise NotConvex(f'repeated vertex at index {i}')

    sin = cross(prev, nxt) / (len_prev * len_next)
    cos = np.einsum('ij,ij->i', prev, nxt) / (len_prev * len_next)
    flat = np.abs(sin) <= tol.degenerate
    reflex = (sin < -tol.degenerate)
    if np.any(reflex):
        raise NotConvex(f'reflex vertex at index {int(np.argmax(reflex))}')
    backtrack = flat & (cos <= 0)
    if np.any(backtrack):
        raise NotConvex(f'collinear triple doubles back at index '
                        f'{int(np.argmax(backtrack))}')
    if np.count_nonzero(~flat) < 3:
        raise NotConvex('vertices are collinear')
    turning = float(np.arctan2(sin, cos).sum())
    if abs(turning - TWO_PI) > 1e-9:
        raise NotConvex(f'vertices turn by {turning:.6f} rad, not 2*pi')

    polygon = ConvexPolygon(v)
    dist = polygon.offsets / polygon.edge_lengths
    if np.any(dist <= tol.degenerate * scale):
        i = int(np.argmin(dist))
        raise OriginNotInterior(f'origin is not interior (edge {i} has '
                                f'signed distance {dist[i]:.3g})')
    return polygon


def perimeter(polygon):
    return float(polygon.edge_lengths.sum())


def area(body, form=STANDARD_FORM):
    """Symplectic area |s| * Lebesgue area

    For a rounded polygon the Steiner formula A + P*eps + pi*eps^2 is exact.
    """
    core = body.core
    lebesgue = signed_area(core.vertices)
    eps = body.radius
    if eps > 0:
        lebesgue += perimeter(core) * eps + math.pi * eps ** 2
    return abs(form.scale) * lebesgue


def inradius(polygon):
    """Distance from the origin to the nearest edge line"""
    polygon = polygon.core
    return float(np.min(polygon.offsets / polygon.edge_lengths))


def support(body, u):
    """Support function h(u) = max over the body of <z, u>"""
    u = np.asarray(u, dtype=float)
    h = np.max(u @ body.core.vertices.T, axis=-1)
    if body.radius > 0:
        h = h + body.radius * np.hypot(u[..., 0], u[..., 1])
    return h


def _segment_distances(q, a, b):
    ab = b - a
    denom = np.einsum('ij,ij->i', ab, ab)
    t = np.clip(np.einsum('ij,ij->i', q - a, ab) / denom, 0.0, 1.0)
    closest = a + t[:, None] * ab
    return np.hypot(closest[:, 0] - q[0], closest[:, 1] - q[1])


def point_polygon_distance(polygon, q):
    """Euclidean distance from q to a convex polygon (0 inside)"""
    q = np.asarray(q, dtype=float)
    if np.all(polygon.normals @ q <= polygon.offsets):
        return 0.0
    v = polygon.vertices
    return float(_segment_distances(q, v, np.roll(v, -1, axis=0)).min())


def _support_hausdorff(K, L):
    """max |h_K(u) - h_L(u)| over unit u, exact on each normal sector"""
    angles = np.concatenate([angle_of(K.core.unit_normals),
                             angle_of(L.core.unit_normals)])
    angles = np.unique(angles)
    ends = np.append(angles[1:], angles[0] + TWO_PI)
    eps_diff = K.radius - L.radius
    best = 0.0
    for lo, hi in zip(angles, ends):
        if hi - lo <= TOL_DEGENERATE:
            continue
        mid = unit_vector(0.5 * (lo + hi))
        a = K.core.vertices[np.argmax(K.core.vertices @ mid)]
        b = L.core.vertices[np.argmax(L.core.vertices @ mid)]
        d = a - b
        candidates = [lo, hi]
        if np.any(d != 0):
            phi = float(angle_of(d))
            for c in (phi, phi + math.pi):
                for shift in (-TWO_PI, 0.0, TWO_PI):
                    if lo < c + shift < hi:
                        candidates.append(c + shift)
        vals = unit_vector(np.array(candidates)) @ d + eps_diff
        best = max(best, float(np.abs(vals).max()))
    return best


def hausdorff_distance(K, L):
    """Hausdorff distance between two convex bodies

    Polygons use the largest vertex-to-polygon distance in both directions,
    which is exact for convex sets. Rounded bodies use the sup-norm of the
    difference of support functions, maximized exactly on every sector where
    both supporting vertices are fixed.
    """
    if is_polygonal(K) and is_polygonal(L):
        P, Q = K.core, L.core
        d_pq = max(point_polygon_distance(Q, v) for v in P.vertices)
        d_qp = max(point_polygon_distance(P, v) for v in Q.vertices)
        return max(d_pq, d_qp)
    return _support_hausdorff(K, L)


def _polygon_ray(polygon, d, tol):
    ratios = polygon.normals @ d / polygon.offsets
    i = int(np.argmax(ratios))
    q = d / ratios[i]
    n = len(polygon)
    e = polygon.edges[i]
    t = float(np.dot(q - polygon.vertices[i], e) / np.dot(e, e))
    if t <= tol.degenerate:
        return BoundaryPoint(polygon.vertices[i].copy(), VertexLocus(i))
    if t >= 1 - tol.degenerate:
        j = (i + 1) % n
        return BoundaryPoint(polygon.vertices[j].copy(), VertexLocus(j))
    return BoundaryPoint(q, EdgeLocus(i, t))


def rounded_ray_parameters(body, directions):
    """Solve for the boundary of a rounded polygon along many rays

    For every row d of `directions`, finds t > 0 with t*d on the boundary.
    Each offset edge and each arc contributes one closed-form candidate; the
    candidate whose locus constraint is violated least is kept.

    Parameters
    ----------
    body : RoundedPolygon
        Body with radius > 0
    directions : np.ndarray, shape (m, 2)
        Nonzero ray directions

    Returns
    -------
    np.ndarray, np.ndarray
        Ray parameters t, shape (m,), and the winning element index, shape
        (m,). Index k < n is offset edge k, index n + k is the arc around
        vertex k.
    """
    core, eps = body.core, body.radius
    D = np.atleast_2d(np.asarray(directions, dtype=float))
    V, E, M = core.vertices, core.edges, core.unit_normals
    M_prev = np.roll(M, 1, axis=0)
    n = len(V)
    rows = np.arange(len(D))

    with np.errstate(divide='ignore', invalid='ignore'):
        md = D @ M.T
        t_edge = (np.einsum('ij,ij->i', M, V) + eps) / md
        Q = t_edge[..., None] * D[:, None, :]
        lam = (np.einsum('mnk,nk->mn', Q - eps * M - V, E)
               / np.einsum('ij,ij->i', E, E))
        viol_edge = (np.maximum(np.maximum(-lam, lam - 1), 0)
                     * core.edge_lengths)
    bad = ~(md > 0)
    t_edge[bad] = np.inf
    viol_edge[bad] = np.inf

    dd = np.einsum('ij,ij->i', D, D)[:, None]
    dv = D @ V.T
    disc = dv ** 2 - dd * (np.einsum('ij,ij->i', V, V) - eps ** 2)
    t_arc = (dv + np.sqrt(np.maximum(disc, 0))) / dd
    W = (t_arc[..., None] * D[:, None, :] - V) / eps
    viol_arc = np.maximum(np.maximum(-cross(M_prev, W), -cross(W, M)),
                          0) * eps
    viol_arc[disc < 0] = np.inf

    t_all = np.concatenate([t_edge, t_arc], axis=1)
    viol = np.concatenate([viol_edge, viol_arc], axis=1)
    k = np.argmin(viol, axis=1)
    return t_all[rows, k], k


def _rounded_ray(body, d):
    t, k = rounded_ray_parameters(body, d[None, :])
    t, k = float(t[0]), int(k[0])
    q = t * d
    core = body.core
    n = len(core)
    if k < n:
        e = core.edges[k]
        base = core.vertices[k] + body.radius * core.unit_normals[k]
        s = float(np.clip(np.dot(q - base, e) / np.dot(e, e), 0.0, 1.0))
        return BoundaryPoint(q, EdgeLocus(k, s))
    i = k - n
    w = q - core.vertices[i]
    return BoundaryPoint(q, ArcLocus(i, float(math.atan2(w[1], w[0]))))


def ray_boundary(body, direction, tol=DEFAULT_TOLERANCES):
    """Intersect the open ray through `direction` with the boundary

    Parameters
    ----------
    body : ConvexPolygon or RoundedPolygon
        Body containing the origin in its interior
    direction : array-like
        Nonzero direction of the ray

    Returns
    -------
    BoundaryPoint
        The boundary point with its edge, vertex or arc locus

    Raises
    ------
    ZeroDirection
        `direction` is the zero vector
    """
    d = as_vec(direction)
    if not np.any(d):
        raise ZeroDirection('ray direction must be nonzero')
    if is_polygonal(body):
        return _polygon_ray(body.core, d, tol)
    return _rounded_ray(body, d)


@dataclass(frozen=True, eq=False)
class MappedPolygon:
    """Image of a polygon under a linear map

    `det` is the factor alpha in omega(Tx, Tz) = alpha * omega(x, z) for the
    standard form, and `orientation` is its sign.
    """
    polygon: ConvexPolygon
    det: float
    orientation: int


def apply_linear(T, polygon):
    """Apply an invertible linear map to a polygon and re-validate it

    Raises
    ------
    SingularMap
        det T is zero within tolerance
    """
    T = np.array(T, dtype=float)
    if T.shape != (2, 2) or not np.all(np.isfinite(T)):
        raise GeometryError('linear map must be a finite 2x2 matrix')
    det = float(np.linalg.det(T))
    if abs(det) <= TOL_DEGENERATE * max(1.0, float(np.abs(T).max()) ** 2):
        raise SingularMap(f'linear map is singular (det = {det:.3g})')
    image = validate_polygon(polygon.vertices @ T.T)
    return MappedPolygon(image, det, 1 if det > 0 else -1)


def vertex_deviation(P, Q):
    """Largest vertex distance between two polygons under the best cyclic
    alignment; infinite when vertex counts differ"""
    a, b = P.vertices, Q.vertices
    if len(a) != len(b):
        return math.inf
    return min(float(np.hypot(*(a - np.roll(b, -k, axis=0)).T).max())
               for k in range(len(b)))
