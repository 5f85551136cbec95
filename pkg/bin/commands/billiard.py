"""Shortest closed Minkowski billiard trajectories and their reflection-law certificates.

The length of the shortest closed trajectory in K, measured with the gauge of B, is the Hofer-Zehnder capacity of
K x B°. A closed polygon is a candidate exactly when its bounce points cannot be covered by a smaller positive
homothet of K, so the search runs over point sets with homothet value lambda >= 1.
"""

import numpy as np
from scipy.optimize import linprog, minimize

from .utils import convex, files
from .utils.convex import BoundaryError, DimensionMismatch, Gauge, ParameterError

DEFAULT_STARTS = 64
PENALTY_STAGES = (10.0, 1e2, 1e3, 1e4, 1e5, 1e6)
POLISH_RESTARTS = 4
SMOOTHING_BAND = 1e-7
PRUNE_TOLERANCE = 1e-9
BOUNDARY_TOLERANCE = 1e-7
_TIE_TOLERANCE = 1e-12


class Trajectory(object):
    """A closed polygon q_1..q_m, q_1 of bounce points."""

    def __init__(self, points, gauge=None, gauge_length=None):
        points = convex.as_points(points, name='points')
        if len(points) < 2:
            raise ParameterError('a closed trajectory needs at least 2 points. Given: {0}'.format(len(points)))
        self.points = points
        self.gauge = gauge
        if gauge_length is None and gauge is not None:
            gauge_length = trajectory_length(self, gauge)
        self.gauge_length = gauge_length

    @property
    def dim(self):
        return self.points.shape[1]

    def edges(self):
        """q_{i+1} - q_i, cyclically."""
        return np.roll(self.points, -1, axis=0) - self.points


class SolverResult(Trajectory):
    """A solver output: the trajectory plus its homothet value and convergence flag."""

    def __init__(self, points, gauge, gauge_length, lambda_, converged, starts):
        super(SolverResult, self).__init__(points, gauge, gauge_length)
        self.lambda_ = lambda_
        self.converged = converged
        self.starts = starts


class ReflectionCertificate(object):
    """Per-edge momenta on the boundary of the polar ball and the normal multipliers at each bounce."""

    def __init__(self, momenta, multipliers, max_violation):
        self.momenta = momenta
        self.multipliers = multipliers
        self.max_violation = max_violation


def trajectory_length(T, g):
    """Return the cyclic sum of gauge lengths of consecutive differences.

    :param Trajectory T: the closed polygon
    :param Gauge g: the gauge measuring length

    :return float: the gauge length
    """

    assert isinstance(T, Trajectory), "'T' must be a Trajectory. Given: " + type(T).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__

    if T.dim != g.dim:
        raise DimensionMismatch('trajectory has dimension {0}, gauge {1}'.format(T.dim, g.dim))
    return float(np.sum(g.evaluate_many(T.edges())))


def is_noncoverable(points, K, tol=convex.TOLERANCE):
    """Return whether no smaller positive homothet of K covers the points.

    :param points: a finite point set
    :param ConvexBody K: the body
    :param float tol: slack on lambda >= 1

    :return bool: True iff the minimal homothet scale is at least 1 - tol
    """

    return convex.min_homothet_cover(K, points).lambda_ >= 1 - tol


def segment_bound_check(T, K):
    """Return the K-K length left after dropping the longest edge; at least 1 for solver outputs."""

    assert isinstance(T, Trajectory), "'T' must be a Trajectory. Given: " + type(T).__name__
    lengths = Gauge.difference(K).evaluate_many(T.edges())
    return float(lengths.sum() - lengths.max())


class _BilliardProblem(object):

    def __init__(self, K, g):
        self.body = K
        self.gauge = g
        self.cover = convex.CoverDual(K) if K.is_polytope else None
        self.center = K.interior_point()
        self.radial = Gauge(K.translated(-self.center))

    def lambda_(self, points):
        if self.cover is not None:
            return self.cover(points)
        return convex.min_homothet_cover(self.body, points).lambda_

    def length(self, points):
        return float(np.sum(self.gauge.evaluate_many(np.roll(points, -1, axis=0) - points)))

    def boundary_points(self, count, rng):
        directions = rng.normal(size=(count, self.body.dim))
        return self.center + directions / self.radial.evaluate_many(directions)[:, None]

    def _penalized(self, x, shape, weight):
        points = x.reshape(shape)
        shortfall = max(0.0, 1.0 - self.lambda_(points))
        return self.length(points) + weight * shortfall ** 2

    def _ratio(self, x, shape):
        points = x.reshape(shape)
        lambda_ = self.lambda_(points)
        if lambda_ <= _TIE_TOLERANCE:
            return np.inf
        return self.length(points) / lambda_

    def _nelder_mead(self, objective, x, args):
        size = x.size
        return minimize(
            objective,
            x,
            args=args,
            method='Nelder-Mead',
            options={'xatol': 1e-10, 'fatol': 1e-13, 'maxiter': 300 * size, 'maxfev': 400 * size, 'adaptive': True}
        )

    def solve_from(self, points):
        """Run the penalty stages and the ratio polish from a start; return (points, converged) or None."""

        shape = points.shape
        x = points.ravel()
        converged = True
        for weight in PENALTY_STAGES:
            result = self._nelder_mead(self._penalized, x, (shape, weight))
            x = result.x

        current = self._ratio(x, shape)
        for _ in range(POLISH_RESTARTS):
            result = self._nelder_mead(self._ratio, x, (shape,))
            converged = bool(result.success)
            improved = current - result.fun
            if result.fun <= current:
                x, current = result.x, result.fun
            if improved <= 1e-12 * max(1.0, abs(current)):
                break

        points = _drop_repeats(x.reshape(shape))
        if len(points) < 2:
            return None
        lambda_ = self.lambda_(points)
        if lambda_ <= _TIE_TOLERANCE:
            return None
        points = self.prune(points, lambda_)

        centroid = points.mean(axis=0)
        points = centroid + (points - centroid) / self.lambda_(points)
        fit = convex.min_homothet_cover(self.body, points)
        points = points - fit.translation
        if not self.on_boundary(points):
            return None
        return points, converged

    def prune(self, points, lambda_):
        """Drop bounce points the homothet value does not need, deepest first.

        Removing a point never lengthens the polygon, so a removal stands whenever lambda stays put.
        """

        floor = lambda_ * (1 - PRUNE_TOLERANCE)
        while len(points) > 2:
            fit = convex.min_homothet_cover(self.body, points)
            depths = [self.body.boundary_excess((point - fit.translation) / fit.lambda_) for point in points]
            for index in np.argsort(depths):
                rest = np.delete(points, index, axis=0)
                if self.lambda_(rest) >= floor:
                    points = rest
                    break
            else:
                break
        return points

    def on_boundary(self, points):
        scale = max(1.0, float(np.max(np.abs(points))))
        return all(abs(self.body.boundary_excess(point)) <= BOUNDARY_TOLERANCE * scale for point in points)


def _drop_repeats(points, tol=1e-9):
    scale = max(1.0, float(np.max(np.ptp(points, axis=0))))
    kept = [points[0]]
    for point in points[1:]:
        if np.linalg.norm(point - kept[-1]) > tol * scale:
            kept.append(point)
    while len(kept) > 1 and np.linalg.norm(kept[-1] - kept[0]) <= tol * scale:
        kept.pop()
    return np.array(kept)


def _is_better(length, points, best):
    if best is None:
        return True
    if length < best.gauge_length - _TIE_TOLERANCE * max(1.0, best.gauge_length):
        return True
    if length > best.gauge_length + _TIE_TOLERANCE * max(1.0, best.gauge_length):
        return False
    if len(points) != len(best.points):
        return len(points) < len(best.points)
    return np.round(points, 12).tolist() < np.round(best.points, 12).tolist()


def shortest_trajectory(K, g, starts=DEFAULT_STARTS, tol=1e-9, seed=0):
    """Search for the shortest closed billiard trajectory in K with lengths measured by g.

    Every start picks m in {2, ..., dim + 1} bounce points on the boundary of K from its own random stream and runs
    Nelder-Mead on length + mu * max(0, 1 - lambda)^2 with mu ramped from 10 to 1e6, then polishes the scale free
    ratio length / lambda. Candidates are rescaled about their centroid to lambda = 1 and translated into K.

    :param ConvexBody K: the billiard table
    :param Gauge g: the gauge measuring length
    :param int starts: number of independent starts
    :param float tol: feasibility slack on lambda
    :param int seed: root seed; start i uses the i-th spawned stream

    :return SolverResult: the shortest candidate found; converged is False if any winning polish hit its budget
    """

    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    assert isinstance(starts, int), "'starts' must be an int. Given: " + type(starts).__name__

    if K.dim != g.dim:
        raise DimensionMismatch('body has dimension {0}, gauge {1}'.format(K.dim, g.dim))
    if starts < 1:
        raise ParameterError('at least one start is needed. Given: {0}'.format(starts))

    problem = _BilliardProblem(K, g)
    streams = np.random.SeedSequence(seed).spawn(starts)
    best = None
    for index, stream in enumerate(streams):
        count = 2 + index % K.dim
        outcome = problem.solve_from(problem.boundary_points(count, np.random.default_rng(stream)))
        if outcome is None:
            continue
        points, converged = outcome
        length = problem.length(points)
        if problem.lambda_(points) < 1 - max(tol, 1e-7):
            continue
        if _is_better(length, points, best):
            best = SolverResult(points, g, length, problem.lambda_(points), converged, starts)

    if best is None:
        raise convex.MalformedLP('no start produced a closed trajectory')
    return best


def capacity_KxBpolar(K, g, starts=DEFAULT_STARTS, seed=0):
    """Return the Hofer-Zehnder capacity of K x B°, B the unit ball of g: the shortest trajectory length."""

    return shortest_trajectory(K, g, starts=starts, seed=seed).gauge_length


def verify_reflection(T, K, g, tol=1e-6):
    """Certify the generalized reflection law along a closed polygon.

    Momenta p_i are convex combinations of subgradients of the gauge at edge i (so p_i is dual unit and attains
    the gauge length); at each bounce q_i the jump p_{i-1} - p_i must lie in the outward normal cone of K. One LP
    minimizes the largest coordinate residual of that jump condition.

    :param Trajectory T: the polygon, bounce points on the boundary of K
    :param ConvexBody K: the table
    :param Gauge g: the gauge
    :param float tol: boundary tolerance and smoothing band for non-smooth gauges

    :return ReflectionCertificate: momenta, multipliers |p_{i-1} - p_i| and the residual
    """

    assert isinstance(T, Trajectory), "'T' must be a Trajectory. Given: " + type(T).__name__
    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__

    points = T.points
    count, dim = points.shape
    for point in points:
        if abs(K.boundary_excess(point)) > tol:
            raise BoundaryError('bounce point {0} is off the boundary'.format(np.round(point, 9).tolist()))

    band = max(SMOOTHING_BAND, tol)
    generators = [g.subgradients(edge, band) for edge in T.edges()]
    cones = [K.normal_cone(point, tol) for point in points]
    for point, cone in zip(points, cones):
        if len(cone) == 0:
            raise BoundaryError('empty normal cone at {0}'.format(np.round(point, 9).tolist()))

    # variable layout: edge weights, then cone coefficients, then the residual bound
    weight_slices, cone_slices = [], []
    offset = 0
    for block in generators:
        weight_slices.append(slice(offset, offset + len(block)))
        offset += len(block)
    for block in cones:
        cone_slices.append(slice(offset, offset + len(block)))
        offset += len(block)
    size = offset + 1

    jumps = []
    for i in range(count):
        incoming = (i - 1) % count
        rows = np.zeros((dim, size))
        rows[:, weight_slices[incoming]] += generators[incoming].T
        rows[:, weight_slices[i]] -= generators[i].T
        rows[:, cone_slices[i]] -= cones[i].T
        jumps.append(rows)
    jumps = np.vstack(jumps)
    bound = np.zeros((jumps.shape[0], size))
    bound[:, -1] = 1.0

    equalities = np.zeros((count, size))
    for i, block in enumerate(weight_slices):
        equalities[i, block] = 1.0

    cost = np.zeros(size)
    cost[-1] = 1.0
    result = linprog(
        cost,
        A_ub=np.vstack([jumps - bound, -jumps - bound]),
        b_ub=np.zeros(2 * jumps.shape[0]),
        A_eq=equalities,
        b_eq=np.ones(count),
        bounds=[(0, None)] * size,
        method='highs'
    )
    if result.status != 0:
        raise convex.MalformedLP('reflection LP did not solve: ' + result.message)

    solution = result.x
    momenta = np.array([generators[i].T @ solution[weight_slices[i]] for i in range(count)])
    multipliers = np.array([
        np.linalg.norm(cones[i].T @ solution[cone_slices[i]]) for i in range(count)
    ])
    return ReflectionCertificate(momenta, multipliers, float(solution[-1]))


def trajectory_to_json(T, violation=None):
    """Serialize as {"points", "length", "lambda", "violation"}."""

    assert isinstance(T, Trajectory), "'T' must be a Trajectory. Given: " + type(T).__name__
    return {
        'points': np.round(T.points, 12).tolist(),
        'length': T.gauge_length,
        'lambda': getattr(T, 'lambda_', None),
        'violation': violation,
    }


def trajectory_from_json(value):
    """Parse a trajectory report back into a Trajectory (length kept as reported)."""

    if not isinstance(value, dict) or not isinstance(value.get('points'), list):
        raise files.InputError('a trajectory must be a JSON object with "points"')
    points = [files.require_finite_vector(point, 'points') for point in value['points']]
    length = value.get('length')
    if length is not None:
        length = files.require_finite_number(length, 'length')
    return Trajectory(points, gauge_length=length)
