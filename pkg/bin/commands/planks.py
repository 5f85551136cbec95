"""Planks, relative widths and covering verification.

A plank {x : lo <= <n, x> <= hi} covering part of a body K has relative width equal to its width in the norm with
unit ball K - K. Coverings are verified exactly by searching the cells of the plank arrangement inside K: every
cell is an LP feasibility problem and its multiplicity is the weight of the planks containing it.
"""

import math

import numpy as np

from .utils import convex, files, messages
from .utils.convex import BudgetExceeded, Gauge, NotInscribed, ParameterError

EXACT_LIMIT = 12
PLANK_LIMIT = 20
CELL_RADIUS = 1e-9
SAMPLED_POINTS = 10000
DESCENT_ITERATIONS = 256
DESCENT_STARTS = 8

BELOW, INSIDE, ABOVE = 'below', 'inside', 'above'


class Plank(object):
    """The closed region lo <= <normal, x> <= hi, carrying a weight."""

    def __init__(self, normal, lo, hi, weight=1.0):
        self.normal = convex.as_vector(normal, name='normal')
        if np.linalg.norm(self.normal) <= convex.TOLERANCE:
            raise ParameterError('plank normal must be nonzero')
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise ParameterError('plank needs finite lo <= hi. Given: lo={0!r}, hi={1!r}'.format(lo, hi))
        if not math.isfinite(weight) or weight < 0:
            raise ParameterError('plank weight must be nonnegative. Given: {0!r}'.format(weight))
        self.lo = float(lo)
        self.hi = float(hi)
        self.weight = float(weight)

    @property
    def dim(self):
        return self.normal.size

    def contains(self, x, tol=convex.TOLERANCE):
        value = float(self.normal @ x)
        return self.lo - tol <= value <= self.hi + tol

    def with_weight(self, weight):
        return Plank(self.normal, self.lo, self.hi, weight)

    def to_json(self):
        return {'normal': self.normal.tolist(), 'lo': self.lo, 'hi': self.hi, 'weight': self.weight}

    def __repr__(self):
        return 'Plank({0!r}, {1!r}, {2!r}, weight={3!r})'.format(self.normal.tolist(), self.lo, self.hi, self.weight)


class CoveringReport(object):
    """The outcome of a covering verification.

    ``region`` holds the constraint rows of the least covered cell so callers can extend a covering; it is not
    serialized.
    """

    def __init__(self, covered, min_multiplicity, witness, width_sum, relative_width_sum, exact=True):
        self.covered = covered
        self.min_multiplicity = min_multiplicity
        self.witness = witness
        self.width_sum = width_sum
        self.relative_width_sum = relative_width_sum
        self.exact = exact
        self.alarm = False
        self.euclidean_width_sum = None
        self.region = None

    def to_json(self):
        report = {
            'covered': self.covered,
            'min_multiplicity': self.min_multiplicity,
            'witness': None if self.witness is None else np.round(self.witness, 12).tolist(),
            'width_sum': self.width_sum,
            'relative_width_sum': self.relative_width_sum,
            'exact': self.exact,
            'alarm': self.alarm,
        }
        if self.euclidean_width_sum is not None:
            report['euclidean_width_sum'] = self.euclidean_width_sum
        return report


def plank_width(P, g):
    """Return (hi - lo) / dual norm of the plank normal.

    :param Plank P: the plank
    :param Gauge g: the norm; Gauge(K - K) gives the width relative to K

    :return float: the width
    """

    assert isinstance(P, Plank), "'P' must be a Plank. Given: " + type(P).__name__
    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    return (P.hi - P.lo) / convex.dual_gauge_eval(g, P.normal)


def _check_planks(K, planks):
    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    assert isinstance(planks, list), "'planks' must be a list. Given: " + type(planks).__name__
    for plank in planks:
        assert isinstance(plank, Plank), "'planks' must hold Planks. Given: " + type(plank).__name__
        if plank.dim != K.dim:
            raise convex.DimensionMismatch('plank has dimension {0}, body {1}'.format(plank.dim, K.dim))


def _width_sums(K, planks):
    relative = Gauge.difference(K)
    width_sum = sum(p.weight * (p.hi - p.lo) / np.linalg.norm(p.normal) for p in planks)
    relative_sum = sum(p.weight * plank_width(p, relative) for p in planks)
    return float(width_sum), float(relative_sum)


def _side_rows(plank, side):
    # the open complements keep a margin so that boundary touching coverings count
    if side == INSIDE:
        return [plank.normal, -plank.normal], [plank.hi, -plank.lo]
    if side == BELOW:
        return [plank.normal], [plank.lo - CELL_RADIUS * np.linalg.norm(plank.normal)]
    return [-plank.normal], [-plank.hi - CELL_RADIUS * np.linalg.norm(plank.normal)]


class _CellSearch(object):
    """Depth-first search over sign patterns for the least covered nonempty cell.

    A prefix whose region has no interior prunes all refinements; a prefix already carrying the best weight found
    so far cannot improve it. Both prunings leave the minimum over all 3^m patterns unchanged.
    """

    def __init__(self, K, planks):
        normals, offsets = K.halfspaces()
        self.planks = planks
        self.rows = list(normals)
        self.offsets = list(offsets)
        lo, hi = K.bounding_box()
        self.radius_cap = float(np.linalg.norm(hi - lo))
        self.best = math.inf
        self.witness = None
        self.region = None

    def run(self):
        self._visit(0, self.rows, self.offsets, 0.0)
        return self.best, self.witness

    def _visit(self, index, rows, offsets, weight):
        if weight >= self.best:
            return
        center, radius = convex.chebyshev_ball(np.array(rows), np.array(offsets), self.radius_cap)
        if center is None or radius <= CELL_RADIUS:
            return
        if index == len(self.planks):
            self.best, self.witness, self.region = weight, center, (np.array(rows), np.array(offsets))
            return
        plank = self.planks[index]
        for side in (BELOW, ABOVE, INSIDE):
            extra_rows, extra_offsets = _side_rows(plank, side)
            added = plank.weight if side == INSIDE else 0.0
            self._visit(index + 1, rows + extra_rows, offsets + extra_offsets, weight + added)


def _sample_body(K, count):
    lo, hi = K.bounding_box()
    side = int(math.ceil(math.sqrt(count))) if K.dim == 2 else int(math.ceil(count ** (1.0 / K.dim)))
    axes = [np.linspace(lo[i], hi[i], side) for i in range(K.dim)]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, K.dim)
    normals, offsets = K.halfspaces()
    return grid[np.max(grid @ normals.T - offsets, axis=1) <= 0]


def sampled_multiplicities(K, planks, count=SAMPLED_POINTS):
    """Weighted multiplicity of every point of a dense grid inside K; returns (points, multiplicities)."""

    points = _sample_body(K, count)
    multiplicities = np.zeros(len(points))
    for plank in planks:
        values = points @ plank.normal
        multiplicities += plank.weight * ((values >= plank.lo) & (values <= plank.hi))
    return points, multiplicities


def covering_check(K, planks, threshold=1.0, quiet=False):
    """Verify that every point of K has weighted plank multiplicity at least threshold.

    Up to EXACT_LIMIT planks the arrangement cells are searched exactly; up to PLANK_LIMIT a dense grid is used and
    the report is marked inexact.

    :param ConvexBody K: the body (balls are polygonized)
    :param list planks: the planks
    :param float threshold: the required multiplicity
    :param bool quiet: suppress the degraded-mode warning

    :return CoveringReport: the report; an uncovered report carries a witness in K outside enough planks
    """

    _check_planks(K, planks)
    if len(planks) > PLANK_LIMIT:
        raise BudgetExceeded('cell enumeration is limited to {0} planks. Given: {1}'.format(PLANK_LIMIT, len(planks)))

    body = K.as_polytope()
    width_sum, relative_sum = _width_sums(K, planks)

    if len(planks) <= EXACT_LIMIT:
        search = _CellSearch(body, planks)
        minimum, witness = search.run()
        if witness is None:
            raise convex.DegenerateBody('the body has no interior cell')
        covered = minimum >= threshold - convex.TOLERANCE
        report = CoveringReport(covered, float(minimum), None if covered else witness, width_sum, relative_sum)
        report.region = search.region
        return report

    messages.warn('{0} planks exceed the exact limit of {1}; sampling a grid instead'.format(len(planks), EXACT_LIMIT), quiet)
    points, multiplicities = sampled_multiplicities(body, planks)
    lowest = int(np.argmin(multiplicities))
    minimum = float(multiplicities[lowest])
    covered = minimum >= threshold - convex.TOLERANCE
    return CoveringReport(covered, minimum, None if covered else points[lowest], width_sum, relative_sum, exact=False)


def bang_report(K, planks, tol=1e-6, quiet=False):
    """Check a plain covering and probe the plank theorem on it.

    A covered report with relative width sum below 1 - tol would contradict the theorem; it is flagged as an alarm
    and announced loudly rather than raised.

    :param ConvexBody K: the body
    :param list planks: the planks; weights are ignored
    :param float tol: probe tolerance

    :return CoveringReport: the report with alarm set when the probe fails
    """

    _check_planks(K, planks)
    unit = [plank.with_weight(1.0) for plank in planks]
    report = covering_check(K, unit, 1.0, quiet)
    if report.covered and report.relative_width_sum < 1 - tol:
        report.alarm = True
        messages.alarm('covering with relative width sum {0!r} < 1 found'.format(report.relative_width_sum))
    return report


def euclidean_bang_report(K, planks, quiet=False):
    """The Euclidean statement: a covered body has Euclidean width sum at least its minimal Euclidean width."""

    report = bang_report(K, planks, quiet=quiet)
    report.euclidean_width_sum = report.width_sum
    if report.covered and report.width_sum < minimal_width(K) - 1e-6:
        report.alarm = True
        messages.alarm('covering with Euclidean width sum below the minimal width')
    return report


def minimal_width(K):
    """Minimal Euclidean width of a ball or a planar polytope, where it is attained at a facet normal."""

    if not K.is_polytope:
        return 2 * K.radius
    if K.dim != 2:
        raise convex.UnsupportedDimension('minimal width is computed for planar polytopes. Given dimension {0}'.format(K.dim))
    normals, _ = K.halfspaces()
    return float(np.min(K.support_many(normals) + K.support_many(-normals)))


def almost_parallel_check(normals, g, tol=1e-6, seed=0):
    """Check that min over c >= 0 with c_j = 1 of the dual norm of sum c_i n_i is at least 1, for every j.

    Each minimization is a convex problem solved by projected subgradient descent from several starts.

    :param list normals: dual-unit normals
    :param Gauge g: the norm; dual norms are support values of its unit ball
    :param float tol: tolerance on the unit normalization and on the minima
    :param int seed: seed for the random starts

    :return bool: True iff every minimum is at least 1 - tol
    """

    assert isinstance(g, Gauge), "'g' must be a Gauge. Given: " + type(g).__name__
    vectors = convex.as_points(normals, g.dim, 'normals')
    for vector in vectors:
        if abs(convex.dual_gauge_eval(g, vector) - 1) > tol:
            raise ParameterError('normal {0} is not dual-unit'.format(np.round(vector, 9).tolist()))

    rng = np.random.default_rng(seed)
    for j in range(len(vectors)):
        if _parallel_minimum(vectors, j, g.unit_ball, rng) < 1 - tol:
            return False
    return True


def _parallel_minimum(vectors, j, ball, rng):
    count = len(vectors)
    free = np.arange(count) != j
    best = math.inf
    for start in range(DESCENT_STARTS):
        c = np.zeros(count) if start == 0 else rng.uniform(0, 2, size=count)
        c[j] = 1.0
        for iteration in range(DESCENT_ITERATIONS):
            y = c @ vectors
            value = ball.support(y)
            best = min(best, value)
            gradient = vectors @ ball.support_point(y)
            step = 1.0 / math.sqrt(iteration + 1)
            c = np.where(free, np.maximum(c - step * gradient, 0.0), 1.0)
        best = min(best, ball.support(c @ vectors))
    return best


def _polygon_extent(polygon, axis):
    if len(polygon) == 0:
        return None
    return float(polygon[:, axis].min()), float(polygon[:, axis].max())


def _slab(polygon, axis, lo, hi):
    normal = np.zeros(2)
    normal[axis] = 1.0
    return convex.clip_to_slab(polygon, normal, lo, hi)


def _merge(intervals, limit):
    intervals = sorted(intervals)
    merged = [list(intervals[0])]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    while len(merged) > limit:
        gaps = [merged[i + 1][0] - merged[i][1] for i in range(len(merged) - 1)]
        i = int(np.argmin(gaps))
        merged[i:i + 2] = [[merged[i][0], merged[i + 1][1]]]
    return merged


def _strip(axis, lo, hi):
    normal = np.zeros(2)
    normal[axis] = 1.0
    return Plank(normal, lo, hi)


def _two_direction_candidate(polygon, rng, jitter):
    vertical_count = int(rng.integers(0, 5))
    horizontal_limit = int(rng.integers(0, 5))
    xs = polygon[:, 0]
    verticals = []
    for _ in range(vertical_count):
        ends = np.sort(rng.choice(xs, size=2) + rng.normal(scale=jitter, size=2))
        verticals.append((max(ends[0], 0.0), min(ends[1], 1.0)))
    verticals = [v for v in verticals if v[0] < v[1]]

    # uncovered pieces between consecutive vertical strips
    cuts = sorted(verticals)
    pieces = []
    position = 0.0
    for lo, hi in cuts + [(1.0, 1.0)]:
        if lo > position:
            extent = _polygon_extent(_slab(polygon, 0, position, lo), 1)
            if extent is not None:
                pieces.append(extent)
        position = max(position, hi)
    if not pieces:
        return [_strip(0, lo, hi) for lo, hi in verticals]
    if horizontal_limit == 0:
        return None
    horizontals = _merge(pieces, horizontal_limit)
    return [_strip(0, lo, hi) for lo, hi in verticals] + [_strip(1, lo, hi) for lo, hi in horizontals]


def two_directions_probe(K2, trials=1000, seed=0, jitter=0.05, quiet=False):
    """Search for axis-parallel strip coverings of a planar body inscribed in the unit square with small width sum.

    Candidates draw up to four vertical strips with ends at vertex projections plus jitter, then complete the
    covering with at most four horizontal strips over the uncovered pieces. A candidate that would lower the
    minimum is confirmed with covering_check before it counts. The two full single strips are always candidates.

    :param ConvexBody K2: a planar body with bounding box [0, 1]^2
    :param int trials: number of random candidates
    :param int seed: seed of the candidate stream
    :param float jitter: standard deviation of the endpoint jitter

    :return float: the least width sum over verified coverings; below 1 - 1e-6 raises an alarm
    """

    assert isinstance(K2, convex.ConvexBody), "'K2' must be a ConvexBody. Given: " + type(K2).__name__
    if K2.dim != 2:
        raise convex.UnsupportedDimension('the two-directions probe is planar. Given dimension {0}'.format(K2.dim))
    lo, hi = K2.bounding_box()
    if np.max(np.abs(lo)) > 1e-9 or np.max(np.abs(hi - 1)) > 1e-9:
        raise NotInscribed('body must be inscribed in the unit square. Bounding box {0} to {1}'.format(
            np.round(lo, 9).tolist(), np.round(hi, 9).tolist()
        ))

    polygon = K2.vertices()
    rng = np.random.default_rng(seed)
    best = math.inf
    candidates = [[_strip(0, 0.0, 1.0)], [_strip(1, 0.0, 1.0)]]
    for _ in range(trials):
        candidate = _two_direction_candidate(polygon, rng, jitter)
        if candidate is not None:
            candidates.append(candidate)

    for candidate in candidates:
        total = sum(p.hi - p.lo for p in candidate)
        if total >= best - 1e-12 or len(candidate) > EXACT_LIMIT:
            continue
        if covering_check(K2, candidate, 1.0, quiet).covered:
            best = total

    if best < 1 - 1e-6:
        messages.alarm('two-direction covering with width sum {0!r} < 1 found'.format(best))
    return float(best)


def plank_from_json(value):
    """Parse {"normal": [...], "lo": a, "hi": b, "weight": t}; weight defaults to 1."""

    if not isinstance(value, dict):
        raise files.InputError('a plank must be a JSON object')
    try:
        return Plank(
            files.require_finite_vector(value.get('normal'), 'normal'),
            files.require_finite_number(value.get('lo'), 'lo'),
            files.require_finite_number(value.get('hi'), 'hi'),
            files.require_finite_number(value.get('weight', 1.0), 'weight')
        )
    except ParameterError as e:
        raise files.InputError(e.message)


def planks_from_json(value):
    if not isinstance(value, list):
        raise files.InputError('planks must be a JSON list')
    return [plank_from_json(entry) for entry in value]


def planks_to_json(planks):
    return [plank.to_json() for plank in planks]


def random_covering(K, rng, max_planks=6, quiet=True):
    """Grow a covering plank by plank, each new plank spanning the least covered cell in a random direction.

    :param ConvexBody K: the body
    :param numpy.random.Generator rng: the random stream
    :param int max_planks: the largest covering to build

    :return list: a verified covering, or None if max_planks did not suffice
    """

    body = K.as_polytope()
    normals, offsets = body.halfspaces()
    covering = []
    region = (normals, offsets)
    while len(covering) < max_planks:
        direction = rng.normal(size=K.dim)
        direction /= np.linalg.norm(direction)
        lo, hi = convex.linear_extent(region[0], region[1], direction)
        if not covering:
            # the first plank takes a random part of the body
            lo, hi = np.sort(rng.uniform(lo, hi, size=2))
        else:
            slack = rng.uniform(0, 0.1) * (hi - lo)
            lo, hi = lo - slack, hi + slack
        covering.append(Plank(direction, lo, hi))
        report = covering_check(body, covering, 1.0, quiet)
        if report.covered:
            return covering
        region = report.region
    return None
