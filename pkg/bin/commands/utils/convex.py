"""Convex bodies and the support, gauge, polar, difference-body and homothet primitives."""

import itertools
import math

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection
from shapely.geometry import GeometryCollection, Polygon

from . import files, special

TOLERANCE = 1e-9
BALL_POLYGON_VERTICES = 720
EXACT_BALL_POINTS = 12
DUAL_VERTEX_BUDGET = 200000

_TIE_TOLERANCE = 1e-12
_LP_OPTIONS = {'primal_feasibility_tolerance': 1e-10, 'dual_feasibility_tolerance': 1e-10}


class GeometryException(Exception):
    """Base of every error raised on geometric input or a failed geometric computation."""

    def __init__(self, message):
        super(GeometryException, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class DimensionMismatch(GeometryException):
    pass


class OriginNotInterior(GeometryException):
    pass


class DegenerateBody(GeometryException):
    pass


class MalformedLP(GeometryException):
    pass


class UnsupportedDimension(GeometryException):
    pass


class ParameterError(GeometryException):
    pass


class BudgetExceeded(GeometryException):
    pass


class FlowStall(GeometryException):
    pass


class NotInscribed(GeometryException):
    pass


class BoundaryError(GeometryException):
    pass


def as_vector(x, dim=None, name='x'):
    """Convert to a finite 1-D float array.

    :param x: a sequence of numbers
    :param int dim: the required length, if any
    :param str name: argument name for diagnostics

    :return numpy.ndarray: the vector
    """

    vector = np.asarray(x, dtype=float)
    if vector.ndim != 1 or vector.size == 0:
        raise DimensionMismatch('{0!r} must be a nonempty vector. Given shape {1}'.format(name, vector.shape))
    if not np.all(np.isfinite(vector)):
        raise ParameterError('{0!r} must be finite'.format(name))
    if dim is not None and vector.size != dim:
        raise DimensionMismatch('{0!r} has dimension {1}, expected {2}'.format(name, vector.size, dim))
    return vector


def as_points(points, dim=None, name='points'):
    """Convert to a finite (k, d) float array with k >= 1."""

    matrix = np.asarray(points, dtype=float)
    if matrix.ndim == 1 and dim is not None and matrix.size == dim:
        matrix = matrix[None, :]
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise DimensionMismatch('{0!r} must be a nonempty list of vectors. Given shape {1}'.format(name, matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise ParameterError('{0!r} must be finite'.format(name))
    if dim is not None and matrix.shape[1] != dim:
        raise DimensionMismatch('{0!r} has dimension {1}, expected {2}'.format(name, matrix.shape[1], dim))
    return matrix


def _frozen(array):
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


def _solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None):
    return linprog(
        c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method='highs-ds', options=_LP_OPTIONS
    )


def chebyshev_ball(normals, offsets, radius_cap=None):
    """Return the largest ball inside {x : normals x <= offsets}.

    :param numpy.ndarray normals: (k, d) constraint rows, not necessarily unit
    :param numpy.ndarray offsets: (k,) right hand sides
    :param float radius_cap: an upper bound on the radius, keeping the LP bounded

    :return tuple: (center, radius) or (None, -1.0) if the region is empty
    """

    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    dim = normals.shape[1]
    norms = np.linalg.norm(normals, axis=1)
    cost = np.zeros(dim + 1)
    cost[-1] = -1.0
    result = _solve_lp(
        cost,
        A_ub=np.hstack([normals, norms[:, None]]),
        b_ub=offsets,
        bounds=[(None, None)] * dim + [(0, radius_cap)]
    )
    if result.status == 2:
        return None, -1.0
    if result.status == 3:
        return None, math.inf
    if result.status != 0:
        raise MalformedLP('Chebyshev ball LP failed: ' + result.message)
    return result.x[:dim], float(result.x[-1])


def linear_extent(normals, offsets, direction):
    """Return (min, max) of <direction, x> over the bounded region {x : normals x <= offsets}."""

    normals = np.asarray(normals, dtype=float)
    direction = as_vector(direction, normals.shape[1], 'direction')
    bounds = [(None, None)] * normals.shape[1]
    extent = []
    for sign in (1.0, -1.0):
        result = _solve_lp(sign * direction, A_ub=normals, b_ub=offsets, bounds=bounds)
        if result.status != 0:
            raise MalformedLP('extent LP did not solve: ' + result.message)
        extent.append(sign * result.fun)
    return extent[0], extent[1]


def _dedupe_rows(rows, tol=1e-9):
    kept = []
    for row in rows:
        if not any(np.max(np.abs(row - other)) <= tol for other in kept):
            kept.append(row)
    return np.array(kept)


class ConvexBody(object):
    """A bounded convex body with nonempty interior."""

    dim = None
    is_polytope = True

    def support(self, y):
        raise NotImplementedError

    def support_many(self, ys):
        raise NotImplementedError

    def support_point(self, y):
        raise NotImplementedError

    def vertices(self):
        raise NotImplementedError

    def halfspaces(self):
        raise NotImplementedError

    def contains(self, x, tol=TOLERANCE):
        return self.boundary_excess(x) <= tol

    def as_polytope(self):
        return self


class _Polytope(ConvexBody):

    def _set_representations(self, vertices, normals, offsets):
        self.dim = vertices.shape[1]
        self._vertices = _frozen(vertices)
        self._normals = _frozen(normals)
        self._offsets = _frozen(offsets)

    def vertices(self):
        """Return the extreme points; counterclockwise in the plane."""
        return self._vertices

    def halfspaces(self):
        """Return (normals, offsets) with unit outward normals."""
        return self._normals, self._offsets

    def support(self, y):
        y = as_vector(y, self.dim, 'y')
        return float(np.max(self._vertices @ y))

    def support_many(self, ys):
        return np.max(np.asarray(ys) @ self._vertices.T, axis=1)

    def support_point(self, y):
        y = as_vector(y, self.dim, 'y')
        values = self._vertices @ y
        best = values.max()
        index = np.flatnonzero(values >= best - _TIE_TOLERANCE * max(1.0, abs(best)))[0]
        return self._vertices[index].copy()

    def boundary_excess(self, x):
        x = as_vector(x, self.dim)
        return float(np.max(self._normals @ x - self._offsets))

    def normal_cone(self, x, tol=TOLERANCE):
        excess = self._normals @ as_vector(x, self.dim) - self._offsets
        if excess.max() > tol:
            raise BoundaryError('point {0} lies outside the body'.format(np.round(x, 12).tolist()))
        return self._normals[np.abs(excess) <= tol]

    def interior_point(self):
        return self._vertices.mean(axis=0)

    def bounding_box(self):
        return self._vertices.min(axis=0), self._vertices.max(axis=0)

    def translated(self, v):
        return VPolytope(self._vertices + as_vector(v, self.dim, 'v'))

    def scaled(self, alpha):
        if alpha <= 0:
            raise ParameterError('scale must be positive. Given: {0!r}'.format(alpha))
        return VPolytope(self._vertices * alpha)


class VPolytope(_Polytope):
    """A polytope given by (a superset of) its vertices; reduced to extreme points on construction."""

    def __init__(self, vertices):
        points = as_points(vertices, name='vertices')
        dim = points.shape[1]
        if dim < 2:
            raise UnsupportedDimension('polytopes need dimension at least 2. Given: {0}'.format(dim))
        try:
            hull = ConvexHull(points)
        except (RuntimeError, ValueError) as e:
            raise DegenerateBody('vertices do not span a body with interior: {0}'.format(str(e).splitlines()[0]))
        if hull.volume <= TOLERANCE ** 2:
            raise DegenerateBody('vertices span a body of zero volume')
        facets = _dedupe_rows(hull.equations)
        self._set_representations(points[hull.vertices], facets[:, :-1], -facets[:, -1])

    def to_json(self):
        return {'type': 'vpolytope', 'vertices': self._vertices.tolist()}


class HPolytope(_Polytope):
    """A polytope {x : <u_j, x> <= b_j}; normals are rescaled to unit length, redundant rows dropped."""

    def __init__(self, normals, offsets):
        A = as_points(normals, name='normals')
        b = as_vector(offsets, A.shape[0], 'offsets')
        dim = A.shape[1]
        if dim < 2:
            raise UnsupportedDimension('polytopes need dimension at least 2. Given: {0}'.format(dim))
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms <= TOLERANCE):
            raise DegenerateBody('halfspace normals must be nonzero')
        A = A / norms[:, None]
        b = b / norms
        _require_bounded(A, b)
        center, radius = chebyshev_ball(A, b)
        if center is None or radius <= TOLERANCE:
            raise DegenerateBody('halfspaces do not bound a body with interior')
        intersection = HalfspaceIntersection(np.hstack([A, -b[:, None]]), center)
        points = intersection.intersections
        hull = ConvexHull(points)
        vertices = _dedupe_rows(points[hull.vertices])
        touching = np.max(vertices @ A.T - b, axis=0) >= -TOLERANCE
        self._set_representations(vertices, A[touching], b[touching])

    def to_json(self):
        return {'type': 'hpolytope', 'normals': self._normals.tolist(), 'offsets': self._offsets.tolist()}


def _require_bounded(A, b):
    dim = A.shape[1]
    for direction in np.vstack([np.eye(dim), -np.eye(dim)]):
        result = _solve_lp(-direction, A_ub=A, b_ub=b, bounds=[(None, None)] * dim)
        if result.status == 3:
            raise DegenerateBody('halfspaces do not bound a bounded body')
        if result.status == 2:
            raise DegenerateBody('halfspaces have an empty intersection')


class Ball(ConvexBody):
    """A Euclidean ball, kept symbolic; polygonized only where polytopes are required."""

    is_polytope = False

    def __init__(self, center, radius, polygon_vertices=BALL_POLYGON_VERTICES):
        self.center = _frozen(as_vector(center, name='center'))
        if not math.isfinite(radius) or radius <= 0:
            raise DegenerateBody('ball radius must be positive. Given: {0!r}'.format(radius))
        self.radius = float(radius)
        self.dim = self.center.size
        self.polygon_vertices = polygon_vertices
        self._polytope = None

    def support(self, y):
        y = as_vector(y, self.dim, 'y')
        return float(self.center @ y + self.radius * np.linalg.norm(y))

    def support_many(self, ys):
        ys = np.asarray(ys)
        return ys @ self.center + self.radius * np.linalg.norm(ys, axis=1)

    def support_point(self, y):
        y = as_vector(y, self.dim, 'y')
        norm = np.linalg.norm(y)
        if norm == 0:
            return self.center.copy()
        return self.center + self.radius * y / norm

    def boundary_excess(self, x):
        return float(np.linalg.norm(as_vector(x, self.dim) - self.center) - self.radius)

    def normal_cone(self, x, tol=TOLERANCE):
        offset = as_vector(x, self.dim) - self.center
        distance = np.linalg.norm(offset)
        if distance - self.radius > tol * max(1.0, self.radius):
            raise BoundaryError('point {0} lies outside the ball'.format(np.round(x, 12).tolist()))
        if abs(distance - self.radius) <= tol * max(1.0, self.radius):
            return (offset / distance)[None, :]
        return np.zeros((0, self.dim))

    def interior_point(self):
        return self.center.copy()

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius

    def translated(self, v):
        return Ball(self.center + as_vector(v, self.dim, 'v'), self.radius, self.polygon_vertices)

    def scaled(self, alpha):
        if alpha <= 0:
            raise ParameterError('scale must be positive. Given: {0!r}'.format(alpha))
        return Ball(self.center * alpha, self.radius * alpha, self.polygon_vertices)

    def as_polytope(self):
        """Return the inscribed polygon (2D) or Fibonacci-sphere polytope (3D)."""

        if self._polytope is None:
            self._polytope = VPolytope(self.center + self.radius * _sphere_points(self.dim, self.polygon_vertices))
        return self._polytope

    def vertices(self):
        return self.as_polytope().vertices()

    def halfspaces(self):
        return self.as_polytope().halfspaces()

    def to_json(self):
        return {'type': 'ball', 'center': self.center.tolist(), 'radius': self.radius}


def _sphere_points(dim, count):
    if dim == 2:
        angles = 2 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if dim == 3:
        indices = np.arange(count) + 0.5
        heights = 1 - 2 * indices / count
        radii = np.sqrt(1 - heights ** 2)
        angles = np.pi * (1 + 5 ** 0.5) * indices
        return np.column_stack([radii * np.cos(angles), radii * np.sin(angles), heights])
    raise UnsupportedDimension('balls are polygonized in dimensions 2 and 3 only. Given: {0}'.format(dim))


class Gauge(object):
    """The Minkowski functional of a body containing the origin in its interior."""

    def __init__(self, unit_ball, tol=TOLERANCE):
        assert isinstance(unit_ball, ConvexBody), "'unit_ball' must be a ConvexBody. Given: " + type(unit_ball).__name__

        if unit_ball.is_polytope:
            normals, offsets = unit_ball.halfspaces()
            if offsets.min() <= tol:
                raise OriginNotInterior('the origin is not interior to the gauge ball')
            self._scaled_normals = normals / offsets[:, None]
            self.symmetric = bool(np.max(-unit_ball.vertices() @ normals.T - offsets) <= tol)
        else:
            if np.linalg.norm(unit_ball.center) >= unit_ball.radius - tol:
                raise OriginNotInterior('the origin is not interior to the gauge ball')
            self._scaled_normals = None
            self.symmetric = bool(np.linalg.norm(unit_ball.center) <= tol)
        self.unit_ball = unit_ball
        self.dim = unit_ball.dim

    @classmethod
    def from_body(cls, body):
        return cls(body)

    @classmethod
    def euclidean(cls, dim):
        return cls(Ball(np.zeros(dim), 1.0))

    @classmethod
    def difference(cls, K):
        return cls(difference_body(K))

    def __call__(self, x):
        return gauge_eval(self, x)

    def evaluate_many(self, xs):
        """Gauge values of the rows of xs."""

        xs = np.asarray(xs, dtype=float)
        if self._scaled_normals is not None:
            return np.maximum(np.max(xs @ self._scaled_normals.T, axis=1), 0.0)
        center = self.unit_ball.center
        slack = self.unit_ball.radius ** 2 - center @ center
        along = xs @ center
        return (np.sqrt(along ** 2 + np.sum(xs * xs, axis=1) * slack) - along) / slack

    def subgradients(self, x, band=1e-7):
        """Generators of the subdifferential of the gauge at x != 0.

        Rows of the polar whose pairing with x is within band of the maximum are all returned, so that vectors
        close to a face get that face's full normal cone.
        """

        x = as_vector(x, self.dim)
        if self._scaled_normals is not None:
            values = self._scaled_normals @ x
            top = values.max()
            return self._scaled_normals[values >= top - band * max(1.0, abs(top))]
        boundary = x / self(x)
        normal = (boundary - self.unit_ball.center) / self.unit_ball.radius
        return (normal / (normal @ boundary))[None, :]


class HomothetFit(object):
    """A minimal scale lambda_ and translation with points inside lambda_ K + translation."""

    def __init__(self, lambda_, translation, multipliers=None):
        self.lambda_ = float(lambda_)
        self.translation = np.asarray(translation, dtype=float)
        self.multipliers = multipliers

    def __repr__(self):
        return 'HomothetFit(lambda_={0!r}, translation={1!r})'.format(self.lambda_, self.translation.tolist())


def support(body, y):
    """Return h_body(y) = sup over x in body of <y, x>.

    :param ConvexBody body: the body
    :param y: a direction

    :return float: the support value
    """

    assert isinstance(body, ConvexBody), "'body' must be a ConvexBody. Given: " + type(body).__name__
    return body.support(y)


def support_point(body, y):
    """Return a maximizer of <y, x> over the body, lowest vertex index on ties."""

    assert isinstance(body, ConvexBody), "'body' must be a ConvexBody. Given: " + type(body).__name__
    return body.support_point(y)


def normal_cone(body, x, tol=TOLERANCE):
    """Return unit generators of the outward normal cone of body at x (empty for interior points)."""

    assert isinstance(body, ConvexBody), "'body' must be a ConvexBody. Given: " + type(body).__name__
    return body.normal_cone(x, tol)


def gauge_eval(g, x):
    """Return min{t > 0 : x in t * g.unit_ball}, and 0 for x = 0.

    :param Gauge g: the gauge
    :param x: the vector

    :return float: the gauge value
    """

    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    x = as_vector(x, g.dim)
    return float(g.evaluate_many(x[None, :])[0])


def dual_gauge_eval(g, y):
    """Return the dual norm of y, i.e. the support of g.unit_ball at y."""

    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    return g.unit_ball.support(y)


def difference_body(K):
    """Return K + (-K): the hull of pairwise vertex differences, or a ball of doubled radius.

    :param ConvexBody K: the body

    :return ConvexBody: the centrally symmetric difference body
    """

    assert isinstance(K, ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    if not K.is_polytope:
        return Ball(np.zeros(K.dim), 2 * K.radius, K.polygon_vertices)
    vertices = K.vertices()
    differences = (vertices[:, None, :] - vertices[None, :, :]).reshape(-1, K.dim)
    return VPolytope(differences)


def _origin_interior(body, tol=TOLERANCE):
    if body.is_polytope:
        return body.halfspaces()[1].min() > tol
    return np.linalg.norm(body.center) < body.radius - tol


def polar(B):
    """Return B° = {y : <y, x> <= 1 for all x in B}.

    A VPolytope gives an HPolytope with one facet per vertex; an HPolytope gives the VPolytope of its scaled
    normals; a centered ball gives the ball of reciprocal radius.

    :param ConvexBody B: a body with the origin in its interior

    :return ConvexBody: the polar body
    """

    assert isinstance(B, ConvexBody), "'B' must be a ConvexBody. Given: " + type(B).__name__
    if not _origin_interior(B):
        raise OriginNotInterior('the polar needs the origin in the interior of the body')

    if isinstance(B, HPolytope):
        normals, offsets = B.halfspaces()
        return VPolytope(normals / offsets[:, None])
    if isinstance(B, VPolytope):
        vertices = B.vertices()
        return HPolytope(vertices, np.ones(len(vertices)))
    if np.linalg.norm(B.center) <= TOLERANCE:
        return Ball(np.zeros(B.dim), 1.0 / B.radius, B.polygon_vertices)
    vertices = B.vertices()
    return HPolytope(vertices, np.ones(len(vertices)))


def enclosing_ball(points):
    """Return the exact minimal enclosing ball of a few points as (center, radius).

    The optimum is the smallest circumscribed ball of some subset of at most d + 1 points that contains all of them.
    """

    points = _dedupe_rows(as_points(points), 0.0)
    count, dim = points.shape
    best_center, best_radius = points[0], math.inf
    for size in range(1, min(dim + 1, count) + 1):
        for subset in itertools.combinations(range(count), size):
            center, radius = _circumball(points[list(subset)])
            if center is None or radius >= best_radius:
                continue
            if np.all(np.linalg.norm(points - center, axis=1) <= radius * (1 + 1e-12) + 1e-15):
                best_center, best_radius = center, radius
    return best_center, float(best_radius)


def _circumball(points):
    base = points[0]
    if len(points) == 1:
        return base.copy(), 0.0
    spans = (points[1:] - base).T
    gram = spans.T @ spans
    if np.linalg.matrix_rank(gram) < len(points) - 1:
        return None, math.inf
    coefficients = np.linalg.solve(gram, 0.5 * np.diag(gram))
    center = base + spans @ coefficients
    return center, float(np.linalg.norm(center - base))


def _homothet_lp(normals, offsets, supports):
    dim = normals.shape[1]
    cost = np.zeros(dim + 1)
    cost[0] = 1.0
    result = _solve_lp(
        cost,
        A_ub=np.hstack([-offsets[:, None], -normals]),
        b_ub=-supports,
        bounds=[(0, None)] + [(None, None)] * dim
    )
    if result.status != 0:
        raise MalformedLP('homothet LP did not solve: ' + result.message)
    return HomothetFit(result.x[0], result.x[1:], -np.asarray(result.ineqlin.marginals))


def min_homothet_cover(K, S):
    """Solve minimize lambda over (lambda, t) subject to S inside lambda K + t.

    The point set enters only through its support values h_S(u_j) on the facet normals of K.

    :param ConvexBody K: the body; balls with few points are fitted exactly, otherwise polygonized
    :param S: a nonempty list of points

    :return HomothetFit: the optimum, with LP dual multipliers for polytopes
    """

    assert isinstance(K, ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    points = as_points(S, K.dim, 'S')

    if len(points) == 1 or np.max(np.ptp(points, axis=0)) == 0:
        return HomothetFit(0.0, points[0].copy())
    if not K.is_polytope and len(points) <= EXACT_BALL_POINTS:
        center, radius = enclosing_ball(points)
        lambda_ = radius / K.radius
        return HomothetFit(lambda_, center - lambda_ * K.center)

    normals, offsets = K.halfspaces()
    return _homothet_lp(normals, offsets, np.max(points @ normals.T, axis=0))


class CoverDual(object):
    """Evaluates the homothet LP value of point sets against a fixed polytope without solving an LP.

    The value equals max over the vertices v of {y >= 0, sum y_j u_j = 0, sum y_j b_j = 1} of sum v_j h_S(u_j); the
    vertices are enumerated once. Bodies whose enumeration would exceed the budget fall back to the LP.
    """

    def __init__(self, K, budget=DUAL_VERTEX_BUDGET):
        assert isinstance(K, ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__

        self.body = K
        self.normals, self.offsets = K.halfspaces()
        facets, dim = self.normals.shape
        subsets = sum(_binomial(facets, size) for size in range(2, dim + 2))
        self.vertices = self._enumerate() if subsets <= budget else None

    def _enumerate(self):
        facets, dim = self.normals.shape
        system = np.vstack([self.normals.T, self.offsets[None, :]])
        target = np.zeros(dim + 1)
        target[-1] = 1.0

        found = []
        for size in range(2, dim + 2):
            for subset in itertools.combinations(range(facets), size):
                columns = system[:, list(subset)]
                weights, _, rank, _ = np.linalg.lstsq(columns, target, rcond=None)
                if rank < size or weights.min() < -1e-12 or np.max(np.abs(columns @ weights - target)) > 1e-9:
                    continue
                vertex = np.zeros(facets)
                vertex[list(subset)] = np.maximum(weights, 0.0)
                found.append(vertex)
        if not found:
            raise MalformedLP('the covering dual has no vertices')
        return _dedupe_rows(np.array(found), 1e-12)

    def certificate(self, points):
        """Return (lambda, dual weights) for a point set."""

        points = np.asarray(points, dtype=float)
        supports = np.max(points @ self.normals.T, axis=0)
        if self.vertices is None:
            fit = _homothet_lp(self.normals, self.offsets, supports)
            return fit.lambda_, fit.multipliers
        values = self.vertices @ supports
        best = int(np.argmax(values))
        return float(values[best]), self.vertices[best]

    def __call__(self, points):
        return self.certificate(points)[0]


def _binomial(n, k):
    return math.comb(n, k) if 0 <= k <= n else 0


def volume(K):
    """Return the volume: qhull facet volumes for polytopes in dimensions 2 and 3, closed form for balls."""

    assert isinstance(K, ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    if not K.is_polytope:
        return special.ball_volume(K.dim) * K.radius ** K.dim
    if K.dim not in (2, 3):
        raise UnsupportedDimension('exact polytope volume is available in dimensions 2 and 3. Given: {0}'.format(K.dim))
    return float(ConvexHull(K.vertices()).volume)


def simplex(dim):
    """conv{0, e_1, ..., e_dim}."""
    return VPolytope(np.vstack([np.zeros(dim), np.eye(dim)]))


def box(lo, hi, dim=2):
    """The cube [lo, hi]^dim."""
    corners = np.array(list(itertools.product((lo, hi), repeat=dim)), dtype=float)
    return VPolytope(corners)


def equilateral_triangle(width=1.0):
    """The equilateral triangle of minimal width (height) `width`, base on the x-axis."""
    side = 2 * width / math.sqrt(3)
    return VPolytope([[0.0, 0.0], [side, 0.0], [side / 2, width]])


def random_polytope(rng, dim=2, count=8, symmetric=False):
    """Hull of Gaussian points, centered on its vertex mean; mirrored when symmetric.

    :param numpy.random.Generator rng: the random stream
    :param int dim: the dimension
    :param int count: number of generating points
    :param bool symmetric: return a centrally symmetric body

    :return VPolytope: the body
    """

    while True:
        points = rng.normal(size=(count, dim))
        if symmetric:
            points = np.vstack([points, -points])
        try:
            body = VPolytope(points)
        except DegenerateBody:
            continue
        if symmetric:
            return body
        return body.translated(-body.interior_point())


def body_from_json(value):
    """Build a body from its JSON object; NaN and Infinity are rejected.

    :param dict value: one of the vpolytope, hpolytope or ball schemas

    :return ConvexBody: the body
    """

    if not isinstance(value, dict) or 'type' not in value:
        raise files.InputError('a body must be a JSON object with a "type"')
    type_ = value['type']
    try:
        if type_ == 'vpolytope':
            return VPolytope(_json_rows(value.get('vertices'), 'vertices'))
        if type_ == 'hpolytope':
            normals = _json_rows(value.get('normals'), 'normals')
            return HPolytope(normals, files.require_finite_vector(value.get('offsets'), 'offsets'))
        if type_ == 'ball':
            return Ball(
                files.require_finite_vector(value.get('center'), 'center'),
                files.require_finite_number(value.get('radius'), 'radius')
            )
    except DimensionMismatch as e:
        raise files.InputError(e.message)
    raise files.InputError('unknown body type {0!r}'.format(type_))


def _json_rows(value, name):
    if not isinstance(value, list) or not value:
        raise files.InputError('{0!r} must be a nonempty list of vectors'.format(name))
    rows = [files.require_finite_vector(row, name) for row in value]
    if len(set(len(row) for row in rows)) != 1:
        raise files.InputError('{0!r} rows must share one dimension'.format(name))
    return rows


def body_to_json(body):
    assert isinstance(body, ConvexBody), "'body' must be a ConvexBody. Given: " + type(body).__name__
    return body.to_json()


def clip_to_slab(points, normal, lo, hi):
    """Clip a planar polygon to the slab lo <= <normal, x> <= hi.

    :param points: (k, 2) polygon vertices in order
    :param normal: the slab normal, any nonzero length
    :param float lo: the lower offset
    :param float hi: the upper offset

    :return numpy.ndarray: the clipped polygon, an edge or point where the slab only touches, or no rows
    """

    points = np.asarray(points, dtype=float).reshape(-1, 2)
    normal = np.asarray(normal, dtype=float)
    if len(points) < 3 or lo > hi:
        return np.zeros((0, 2))

    along = normal / normal.dot(normal)
    across = np.array([-normal[1], normal[0]]) / np.linalg.norm(normal)
    reach = 2 * float(np.max(np.abs(points))) + abs(lo) + abs(hi) + 1.0
    slab = Polygon([
        lo * along - reach * across, hi * along - reach * across, hi * along + reach * across, lo * along + reach * across
    ])
    return _coordinates(Polygon(points).intersection(slab))


def _coordinates(geometry):
    if geometry.is_empty:
        return np.zeros((0, 2))
    if isinstance(geometry, Polygon):
        return np.asarray(geometry.exterior.coords, dtype=float)[:-1]
    if isinstance(geometry, GeometryCollection):
        parts = [_coordinates(part) for part in geometry.geoms]
        return max(parts, key=len)
    return np.asarray(geometry.coords, dtype=float)
