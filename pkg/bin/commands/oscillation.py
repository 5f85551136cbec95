"""Oscillation of a function against the dual norm of its gradient, and coverings of graphs by homothets.

Along the steepest-ascent flow of F in a norm, F grows at the rate of the dual norm of dF. Flowing from the minimum
for a time that stays inside the body gives max F - min F >= factor * min |dF|_*, the factor being 2 on the unit ball
of the norm, 1 on any body with the norm of K - K, and xi / 2 with xi the shortest billiard length.
"""

import enum
import itertools
import math

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from . import billiard
from .utils import convex, files
from .utils.convex import FlowStall, Gauge, ParameterError

DEFAULT_SAMPLES = 4096
SUBDIVISION_LENGTH = 1e-3
_GRADIENT_FLOOR = 1e-12


class Variant(enum.Enum):
    BALL2X = 'ball2x'
    DIFF1X = 'diff1x'
    BILLIARD = 'billiard'


class FieldError(ParameterError):
    pass


class Polynomial(object):
    """A multivariate polynomial field with exact gradient.

    :param dict terms: maps exponent tuples to coefficients, e.g. {(1, 0): 2.0} for 2 x_1
    """

    def __init__(self, terms):
        assert isinstance(terms, dict), "'terms' must be a dict. Given: " + type(terms).__name__
        if not terms:
            raise FieldError('a polynomial needs at least one term')
        if len(set(len(key) for key in terms)) != 1:
            raise FieldError('exponents must be tuples of nonnegative integers of one length')
        exponents = np.array([list(key) for key in terms], dtype=int)
        if exponents.ndim != 2 or exponents.shape[1] == 0 or np.any(exponents < 0):
            raise FieldError('exponents must be tuples of nonnegative integers of one length')
        coefficients = np.array([float(value) for value in terms.values()])
        if not np.all(np.isfinite(coefficients)):
            raise FieldError('coefficients must be finite')
        self.dim = exponents.shape[1]
        self._exponents = exponents
        self._coefficients = coefficients
        self._derivatives = [self._derivative(i) for i in range(self.dim)]

    def _derivative(self, i):
        mask = self._exponents[:, i] > 0
        exponents = self._exponents[mask].copy()
        coefficients = self._coefficients[mask] * exponents[:, i]
        exponents[:, i] -= 1
        return exponents, coefficients

    @property
    def degree(self):
        return int(self._exponents.sum(axis=1).max())

    @staticmethod
    def _evaluate(exponents, coefficients, xs):
        if len(coefficients) == 0:
            return np.zeros(len(xs))
        return np.prod(xs[:, None, :] ** exponents[None, :, :], axis=2) @ coefficients

    def evaluate_many(self, xs):
        return self._evaluate(self._exponents, self._coefficients, np.asarray(xs, dtype=float))

    def gradient_many(self, xs):
        xs = np.asarray(xs, dtype=float)
        return np.column_stack([self._evaluate(e, c, xs) for e, c in self._derivatives])

    def __call__(self, x):
        return float(self.evaluate_many(convex.as_vector(x, self.dim)[None, :])[0])

    def gradient(self, x):
        return self.gradient_many(convex.as_vector(x, self.dim)[None, :])[0]

    def check_gradient(self, points, relative=1e-5):
        """Compare the gradient with central differences; raise FieldError on mismatch."""

        for x in np.asarray(points, dtype=float):
            exact = self.gradient(x)
            step = 1e-6 * max(1.0, float(np.linalg.norm(x)))
            for i in range(self.dim):
                offset = np.zeros(self.dim)
                offset[i] = step
                estimate = (self(x + offset) - self(x - offset)) / (2 * step)
                if abs(estimate - exact[i]) > relative * max(1.0, abs(exact[i])):
                    raise FieldError('gradient mismatch at {0} in coordinate {1}'.format(np.round(x, 6).tolist(), i))

    def to_json(self):
        return {
            'poly': {
                '[' + ','.join(str(int(e)) for e in exponent) + ']': float(coefficient)
                for exponent, coefficient in zip(self._exponents, self._coefficients)
            }
        }

    @classmethod
    def from_json(cls, value):
        """Parse {"poly": {"[1,0]": 2.0, ...}} and self-check the gradient."""

        if not isinstance(value, dict) or not isinstance(value.get('poly'), dict):
            raise files.InputError('a field must be a JSON object with a "poly" map')
        terms = {}
        for key, coefficient in value['poly'].items():
            exponent = files.parse_json(key, 'exponent key {0!r}'.format(key))
            if not isinstance(exponent, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in exponent):
                raise files.InputError('exponent key {0!r} must be a list of integers'.format(key))
            terms[tuple(exponent)] = files.require_finite_number(coefficient, 'coefficient')
        try:
            field = cls(terms)
        except FieldError as e:
            raise files.InputError(e.message)
        field.check_gradient(np.random.default_rng(0).uniform(-1, 1, size=(16, field.dim)))
        return field


def random_polynomial(dim, degree, rng):
    """A polynomial with Gaussian coefficients on every monomial of total degree at most degree."""

    terms = {}
    for exponent in itertools.product(range(degree + 1), repeat=dim):
        if sum(exponent) <= degree:
            terms[exponent] = float(rng.normal())
    return Polynomial(terms)


class EmbeddedGraph(object):
    """A connected graph drawn with straight edges."""

    def __init__(self, nodes, edges):
        self.nodes = convex.as_points(nodes, name='nodes')
        self.edges = [tuple(int(i) for i in edge) for edge in edges]
        if not self.edges:
            raise ParameterError('a graph needs at least one edge')
        for u, v in self.edges:
            if not (0 <= u < len(self.nodes) and 0 <= v < len(self.nodes)):
                raise ParameterError('edge ({0}, {1}) refers to a missing node'.format(u, v))
            if np.linalg.norm(self.nodes[u] - self.nodes[v]) <= convex.TOLERANCE:
                raise ParameterError('edge ({0}, {1}) is degenerate'.format(u, v))
        if len(self._reachable(0)) != len(self.nodes):
            raise ParameterError('graph is disconnected')

    @property
    def dim(self):
        return self.nodes.shape[1]

    def _reachable(self, start):
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for u, v in self.edges:
                for a, b in ((u, v), (v, u)):
                    if a == node and b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return seen


def random_graph(K, rng, max_edges=6):
    """A random connected graph with nodes inside K: a random tree plus random chords."""

    count = int(rng.integers(2, max_edges + 1))
    nodes = _sample_inside(K, count, rng)
    edges = [(int(rng.integers(0, i)), i) for i in range(1, count)]
    while len(edges) < max_edges and rng.random() < 0.5:
        u, v = (int(i) for i in rng.choice(count, size=2, replace=False))
        edges.append((u, v))
    return EmbeddedGraph(nodes, edges)


def _sample_inside(K, count, rng):
    lo, hi = K.bounding_box()
    points = []
    while len(points) < count:
        candidate = rng.uniform(lo, hi)
        if K.contains(candidate, 0.0):
            points.append(candidate)
    return np.array(points)


def _inside_mask(K, points):
    if K.is_polytope:
        normals, offsets = K.halfspaces()
        return np.max(points @ normals.T - offsets, axis=1) <= convex.TOLERANCE
    return np.linalg.norm(points - K.center, axis=1) <= K.radius * (1 + convex.TOLERANCE)


def sample_body(K, samples=DEFAULT_SAMPLES, seed=0):
    """A deterministic sample of K: scrambled Sobol points in the bounding box, the vertices and an interior point."""

    lo, hi = K.bounding_box()
    sobol = qmc.Sobol(K.dim, scramble=True, seed=seed)
    unit = sobol.random_base2(max(1, int(math.ceil(math.log2(max(samples, 2))))))
    points = qmc.scale(unit, lo, hi)
    points = points[_inside_mask(K, points)]
    return np.vstack([points, K.vertices(), K.interior_point()[None, :]])


def _constraints(K):
    if K.is_polytope:
        normals, offsets = K.halfspaces()
        return [{'type': 'ineq', 'fun': lambda x: offsets - normals @ x, 'jac': lambda x: -normals}]
    center, radius = K.center, K.radius
    return [{
        'type': 'ineq',
        'fun': lambda x: np.array([radius ** 2 - (x - center) @ (x - center)]),
        'jac': lambda x: -2 * (x - center)[None, :],
    }]


def _refined_maximum(F, K, start, sign):
    """Largest value of sign * F near start: a support step along the gradient and an SLSQP run."""

    best = sign * F(start)
    step = K.support_point(sign * F.gradient(start))
    best = max(best, sign * F(step))
    result = minimize(
        lambda x: -sign * F(x),
        start,
        jac=lambda x: -sign * F.gradient(x),
        method='SLSQP',
        constraints=_constraints(K),
        options={'ftol': 1e-14, 'maxiter': 200}
    )
    if np.all(np.isfinite(result.x)) and K.contains(result.x, 0.0):
        best = max(best, -result.fun)
    return best


def oscillation(F, K, samples=DEFAULT_SAMPLES, seed=0):
    """Return max F - min F over K from a low-discrepancy sample refined locally.

    :param Polynomial F: the field
    :param ConvexBody K: the body
    :param int samples: sample resolution
    :param int seed: scrambling seed

    :return float: the oscillation
    """

    assert isinstance(F, Polynomial), "'F' must be a Polynomial. Given: " + type(F).__name__
    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    if F.dim != K.dim:
        raise convex.DimensionMismatch('field has dimension {0}, body {1}'.format(F.dim, K.dim))

    points = sample_body(K, samples, seed)
    values = F.evaluate_many(points)
    top = max(float(values.max()), _refined_maximum(F, K, points[np.argmax(values)], 1.0))
    bottom = min(float(values.min()), -_refined_maximum(F, K, points[np.argmin(values)], -1.0))
    return top - bottom


def min_dual_grad(F, K, g, samples=DEFAULT_SAMPLES, seed=0):
    """Return the least dual norm of dF over K from a sample refined locally."""

    assert isinstance(F, Polynomial), "'F' must be a Polynomial. Given: " + type(F).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__

    points = sample_body(K, samples, seed)
    values = g.unit_ball.support_many(F.gradient_many(points))
    start = points[np.argmin(values)]
    best = float(values.min())

    result = minimize(
        lambda x: g.unit_ball.support(F.gradient(x)),
        start,
        method='SLSQP',
        constraints=_constraints(K),
        options={'ftol': 1e-14, 'maxiter': 200}
    )
    if np.all(np.isfinite(result.x)) and K.contains(result.x, 0.0):
        best = min(best, float(result.fun))
    return max(best, 0.0)


def flow_trace(F, g, x0, horizon, dt):
    """Integrate x' = y(x), y(x) the unit-gauge vector maximizing <dF(x), y>, with explicit Euler steps.

    :param Polynomial F: the field
    :param Gauge g: the norm; y(x) is a support point of its unit ball, lowest vertex on ties
    :param x0: the start
    :param float horizon: total time
    :param float dt: step size

    :return numpy.ndarray: the trace, one row per step
    """

    assert isinstance(F, Polynomial), "'F' must be a Polynomial. Given: " + type(F).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    if not (dt > 0 and horizon >= 0):
        raise ParameterError('flow needs dt > 0 and horizon >= 0. Given: dt={0!r}, horizon={1!r}'.format(dt, horizon))

    x = convex.as_vector(x0, g.dim, 'x0')
    steps = int(math.ceil(horizon / dt - 1e-9))
    trace = [x]
    value = F(x)
    for _ in range(steps):
        gradient = F.gradient(x)
        if np.linalg.norm(gradient) < _GRADIENT_FLOOR:
            raise FlowStall('the gradient vanishes at {0}'.format(np.round(x, 9).tolist()))
        x = x + dt * g.unit_ball.support_point(gradient)
        following = F(x)
        if not (np.all(np.isfinite(x)) and math.isfinite(following)):
            raise FlowStall('the trace left the numeric domain')
        if following < value - dt * 1e-3:
            raise FlowStall('F decreased along the trace from {0!r} to {1!r}'.format(value, following))
        trace.append(x)
        value = following
    return np.array(trace)


def _same_body(A, B, tol=1e-7):
    angles = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    if A.dim == 2:
        directions = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        directions = np.random.default_rng(0).normal(size=(64, A.dim))
    scale = max(1.0, float(np.max(np.abs(A.support_many(directions)))))
    return np.max(np.abs(A.support_many(directions) - B.support_many(directions))) <= tol * scale


def verify_oscillation_bound(F, K, variant, g, xi=None, samples=DEFAULT_SAMPLES, tol=1e-9, starts=None, seed=0):
    """Check max F - min F >= factor * min |dF|_* over K.

    :param Polynomial F: the field
    :param ConvexBody K: the body
    :param variant: ball2x (K is the unit ball of g, factor 2), diff1x (g is the K - K norm, factor 1) or billiard
        (factor xi / 2, xi the shortest billiard length of K in g)
    :param Gauge g: the norm
    :param float xi: a known shortest billiard length; computed when absent
    :param int samples: sample resolution
    :param float tol: slack on the comparison
    :param int starts: billiard solver starts when xi is computed

    :return tuple: (lhs, rhs, ok)
    """

    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    variant = Variant(variant.value if isinstance(variant, Variant) else variant)

    if variant is Variant.BALL2X:
        if not _same_body(K, g.unit_ball):
            raise ParameterError('ball2x needs K to be the unit ball of the norm')
        factor = 2.0
    elif variant is Variant.DIFF1X:
        if not _same_body(convex.difference_body(K), g.unit_ball):
            raise ParameterError('diff1x needs the norm with unit ball K - K')
        factor = 1.0
    else:
        if xi is None:
            xi = billiard.capacity_KxBpolar(K, g, starts=starts or billiard.DEFAULT_STARTS, seed=seed)
        factor = xi / 2.0

    lhs = oscillation(F, K, samples, seed)
    rhs = factor * min_dual_grad(F, K, g, samples, seed)
    return lhs, rhs, bool(lhs >= rhs - tol)


def _subdivide(G, gauge):
    points = [G.nodes]
    for u, v in G.edges:
        start, end = G.nodes[u], G.nodes[v]
        pieces = int(math.ceil(gauge(end - start) / SUBDIVISION_LENGTH))
        if pieces > 1:
            shares = np.linspace(0, 1, pieces + 1)[1:-1, None]
            points.append(start + shares * (end - start))
    return np.vstack(points)


def graph_cover_check(G, K, tol=1e-9):
    """Check that the graph fits in a translate of hK, h its total length in the norm of K - K.

    :param EmbeddedGraph G: the graph
    :param ConvexBody K: the body

    :return tuple: (h, lambda, ok) with lambda the least homothet scale covering nodes and subdivision points
    """

    assert isinstance(G, EmbeddedGraph), "'G' must be an EmbeddedGraph. Given: " + type(G).__name__
    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    if G.dim != K.dim:
        raise convex.DimensionMismatch('graph has dimension {0}, body {1}'.format(G.dim, K.dim))

    gauge = Gauge.difference(K)
    h = float(sum(gauge(G.nodes[v] - G.nodes[u]) for u, v in G.edges))
    fit = convex.min_homothet_cover(K, _subdivide(G, gauge))
    return h, fit.lambda_, bool(fit.lambda_ <= h + tol)


def merge_cover_certificate(G, K, tol=1e-7):
    """Build the cover hK + t by merging per-edge homothets through shared nodes.

    If aK + s and bK + t both contain v then (a + b)K + (s + t - v) contains both.

    :return tuple: (HomothetFit, ok) where ok says every node lies in the merged homothet
    """

    assert isinstance(G, EmbeddedGraph), "'G' must be an EmbeddedGraph. Given: " + type(G).__name__

    scale, translation = 0.0, G.nodes[0].copy()
    covered = {0}
    remaining = list(G.edges)
    while remaining:
        for index, (u, v) in enumerate(remaining):
            if u in covered or v in covered:
                break
        u, v = remaining.pop(index)
        shared = u if u in covered else v
        edge = convex.min_homothet_cover(K, [G.nodes[u], G.nodes[v]])
        scale, translation = scale + edge.lambda_, translation + edge.translation - G.nodes[shared]
        covered.update((u, v))

    fit = convex.HomothetFit(scale, translation)
    ok = all(K.contains((node - translation) / scale, tol) for node in G.nodes)
    return fit, ok
