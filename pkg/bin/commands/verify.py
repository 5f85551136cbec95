"""The acceptance suite behind verify-all: fixture values and seeded property suites."""

import math
import time
from collections import OrderedDict

import numpy as np

from . import ballcut, billiard, fractional, oscillation, planks
from .utils import convex, messages, special
from .utils.convex import Gauge, ParameterError

FIXTURE_STARTS = 16
SUITE_STARTS = 4
RANDOM_BODIES = 12
PROPERTY_TRIALS = 200
OSCILLATION_SAMPLES = 1024

DEFAULT_TOLERANCES = {
    'billiard': 1e-3,
    'simplex': 1e-2,
    'bound': 1e-2,
    'bang': 1e-6,
    'oscillation': 1e-6,
    'equality': 1e-9,
    'graph': 1e-9,
    'constants': 1e-10,
    'pushforward': 0.03,
    'integral': 1e-2,
    'ballcut': 1e-9,
    'oracle': 1e-6,
}


class Item(object):
    """One suite entry: its verdict, a deterministic detail mapping and the elapsed time."""

    def __init__(self, name, ok, detail, seconds):
        self.name = name
        self.ok = ok
        self.detail = detail
        self.seconds = seconds

    def to_json(self):
        return {'name': self.name, 'ok': self.ok, 'detail': self.detail}


class Summary(object):

    def __init__(self, seed, items):
        self.seed = seed
        self.items = items

    @property
    def ok(self):
        return all(item.ok for item in self.items)

    def to_json(self):
        return {'seed': self.seed, 'ok': self.ok, 'items': [item.to_json() for item in self.items]}

    def table(self):
        width = max([len(item.name) for item in self.items] + [4])
        lines = []
        for item in self.items:
            lines.append('{0:<{1}}  {2}  {3:8.2f}s'.format(item.name, width, messages.verdict(item.ok), item.seconds))
        total = sum(item.seconds for item in self.items)
        lines.append('{0:<{1}}  {2}  {3:8.2f}s'.format('total', width, 'pass' if self.ok else 'FAIL', total))
        return '\n'.join(lines)


def _billiard_length(K, g, starts, seed):
    return billiard.shortest_trajectory(K, g, starts=starts, seed=seed).gauge_length


def _triangle_relative(rng, seed, tol):
    T = convex.equilateral_triangle()
    length = _billiard_length(T, Gauge.difference(T), FIXTURE_STARTS, seed)
    return abs(length - 1.5) <= tol['billiard'], {'length': length, 'expected': 1.5}


def _triangle_euclidean(rng, seed, tol):
    T = convex.equilateral_triangle()
    length = _billiard_length(T, Gauge.euclidean(2), FIXTURE_STARTS, seed)
    return abs(length - math.sqrt(3)) <= tol['billiard'], {'length': length, 'expected': math.sqrt(3)}


def _symmetric_self_gauge(rng, seed, tol):
    disk = convex.Ball([0.0, 0.0], 1.0)
    length = _billiard_length(disk, Gauge.from_body(disk), FIXTURE_STARTS, seed)
    ok = abs(length - 4) <= tol['billiard']

    shortest = math.inf
    for index in range(RANDOM_BODIES):
        B = convex.random_polytope(rng, dim=2 + index % 2, count=6, symmetric=True)
        shortest = min(shortest, _billiard_length(B, Gauge.from_body(B), SUITE_STARTS, seed + index))
    ok = ok and shortest >= 4 - tol['bound']
    return ok, {'disk': length, 'random_minimum': shortest}


def _difference_gauge(rng, seed, tol):
    S = convex.simplex(3)
    length = _billiard_length(S, Gauge.difference(S), FIXTURE_STARTS, seed)
    ok = abs(length - 4.0 / 3) <= tol['simplex']

    shortest = math.inf
    for index in range(RANDOM_BODIES):
        K = convex.random_polytope(rng, dim=2, count=8)
        shortest = min(shortest, _billiard_length(K, Gauge.difference(K), SUITE_STARTS, seed + index))
    ok = ok and shortest >= 1.5 - tol['bound']
    return ok, {'simplex': length, 'random_minimum': shortest}


def _body_gauge(rng, seed, tol):
    shortest = math.inf
    for index in range(RANDOM_BODIES):
        K = convex.random_polytope(rng, dim=2, count=8)
        shortest = min(shortest, _billiard_length(K, Gauge.from_body(K), SUITE_STARTS, seed + index))
    return shortest >= 3 - tol['bound'], {'random_minimum': shortest}


def _bang(rng, seed, tol):
    square = convex.box(0.0, 1.0)
    halves = [planks.Plank([1.0, 0.0], 0.0, 0.5), planks.Plank([1.0, 0.0], 0.5, 1.0)]
    tight = planks.bang_report(square, halves, quiet=True)
    ok = tight.covered and tight.relative_width_sum == 1.0

    verified, attempts, smallest = 0, 0, math.inf
    while verified < PROPERTY_TRIALS and attempts < 10 * PROPERTY_TRIALS:
        attempts += 1
        K = convex.random_polytope(rng, dim=2, count=int(rng.integers(3, 9)))
        covering = planks.random_covering(K, rng, max_planks=6)
        if covering is None:
            continue
        report = planks.bang_report(K, covering, tol['bang'], quiet=True)
        if not report.covered:
            continue
        verified += 1
        smallest = min(smallest, report.relative_width_sum)
        ok = ok and not report.alarm
    ok = ok and verified == PROPERTY_TRIALS and smallest >= 1 - tol['bang']
    return ok, {'tight': tight.relative_width_sum, 'coverings': verified, 'smallest': smallest}


def _almost_parallel(rng, seed, tol):
    euclidean = Gauge.euclidean(2)
    fixtures = [
        planks.almost_parallel_check([[1.0, 0.0], [0.0, 1.0]], euclidean, seed=seed),
        not planks.almost_parallel_check([[1.0, 0.0], [-1.0, 0.0]], euclidean, seed=seed),
        planks.almost_parallel_check([[1.0, 0.0]], euclidean, seed=seed),
    ]
    failures = 0
    for index in range(200):
        dim = int(rng.integers(2, 5))
        normals = fractional.random_cone_vectors(int(rng.integers(1, 6)), dim, 0.0, rng)
        if not planks.almost_parallel_check(normals, Gauge.euclidean(dim), seed=seed + index):
            failures += 1
    return all(fixtures) and failures == 0, {'fixtures': fixtures, 'random_failures': failures}


def _oscillation(rng, seed, tol):
    triangle = convex.equilateral_triangle()
    disk = convex.Ball([0.0, 0.0], 1.0)
    euclidean = Gauge.euclidean(2)

    lhs, rhs, _ = oscillation.verify_oscillation_bound(
        oscillation.Polynomial({(1, 0): 3.0, (0, 1): -4.0}), disk, 'ball2x', euclidean, samples=OSCILLATION_SAMPLES
    )
    ball_gap = abs(lhs - rhs)
    lhs, rhs, _ = oscillation.verify_oscillation_bound(
        oscillation.Polynomial({(1, 0): 1.0}), triangle, 'diff1x', Gauge.difference(triangle), samples=OSCILLATION_SAMPLES
    )
    triangle_gap = abs(lhs - rhs)
    ok = ball_gap <= tol['equality'] and triangle_gap <= tol['equality']

    violations = 0
    for index in range(PROPERTY_TRIALS):
        F = oscillation.random_polynomial(2, int(rng.integers(1, 4)), rng)
        B = convex.random_polytope(rng, dim=2, count=6, symmetric=True)
        K = convex.random_polytope(rng, dim=2, count=8)
        checks = [
            (B, 'ball2x', Gauge.from_body(B), None),
            (K, 'diff1x', Gauge.difference(K), None),
            (triangle, 'billiard', euclidean, math.sqrt(3)),
        ]
        for body, variant, g, xi in checks:
            lhs, rhs, _ = oscillation.verify_oscillation_bound(
                F, body, variant, g, xi=xi, samples=OSCILLATION_SAMPLES, seed=seed + index
            )
            if lhs < rhs - tol['oscillation'] * max(1.0, rhs):
                violations += 1
    ok = ok and violations == 0
    return ok, {'ball_gap': ball_gap, 'triangle_gap': triangle_gap, 'violations': violations}


def _graph_cover(rng, seed, tol):
    T = convex.equilateral_triangle()
    segment = oscillation.EmbeddedGraph([[0.1, 0.1], [0.7, 0.3]], [(0, 1)])
    h, lambda_, _ = oscillation.graph_cover_check(segment, T)
    ok = abs(h - lambda_) <= tol['graph']

    failures = 0
    for _ in range(PROPERTY_TRIALS):
        K = convex.random_polytope(rng, dim=2, count=8)
        _, _, covered = oscillation.graph_cover_check(oscillation.random_graph(K, rng), K, tol['graph'])
        failures += not covered
    return ok and failures == 0, {'segment_gap': abs(h - lambda_), 'failures': failures}


def _constants(rng, seed, tol):
    w3 = fractional.W_constant(3)
    worst = max(abs(fractional.W_constant(n) - fractional.W_quadrature(n)) for n in range(2, 31))
    cylinder = fractional.cylinder_bound(4, 2)
    rho_gap = max(abs(fractional.rho_density(2, x) - 2 * math.pi) for x in ([0.0, 0.0], [0.5, 0.5], [0.6, -0.8]))
    _, empirical, exact = fractional.pushforward_density(5, 3, seed=seed)
    pushforward = 0.5 * float(np.sum(np.abs(empirical - exact)))
    integral = fractional.rho_integral(5, 3, seed=seed)

    ok = (
        abs(w3 - 2) <= 1e-12
        and worst <= tol['constants']
        and abs(cylinder - math.pi) <= 1e-12
        and rho_gap <= 1e-12
        and pushforward <= tol['pushforward']
        and abs(integral / special.sphere_area(5) - 1) <= tol['integral']
    )
    return ok, {'W3': w3, 'W_quadrature_gap': worst, 'cylinder_4_2': cylinder, 'pushforward_error': pushforward}


def _fractional_bound(rng, seed, tol):
    failures = 0
    for _ in range(500):
        count = int(rng.integers(1, 9))
        c = float(rng.uniform(0, 0.9))
        vectors = fractional.random_cone_vectors(count, int(rng.integers(2, 6)), c, rng)
        _, _, ok = fractional.sum_norm_lower(vectors, c)
        failures += not ok
    endpoints = all(
        fractional.fractional_bang_bound(k, 0) == 2 * math.sqrt(k) and fractional.fractional_bang_bound(k, 1) == 2 * k
        for k in range(1, 21)
    )
    return failures == 0 and endpoints, {'failures': failures, 'endpoints': endpoints}


def _ball_cut(rng, seed, tol):
    grid = [math.pi * i / 98 for i in range(1, 98)]
    additivity = max(abs(ballcut.verify_cut_additivity(tau0)[2] - math.pi) for tau0 in grid)
    minimal = all(ballcut.cap_capacity(tau0) == ballcut.principal_action(tau0) for tau0 in grid)
    inequalities = ballcut.verify_key_inequalities(100)

    oracle_error, ordered = 0.0, True
    for tau0 in (math.pi / 5, math.pi / 3, 0.45 * math.pi):
        for p in ballcut.admissible_family(tau0, mmax=12):
            exact = ballcut.characteristic_action(p)
            oracle_error = max(oracle_error, abs(exact - ballcut.arc_action(p)))
            ordered = ordered and ballcut.cap_action(p) <= exact + 1e-12

    ok = additivity <= tol['ballcut'] and minimal and inequalities and oracle_error <= tol['oracle'] and ordered
    return ok, {
        'additivity_error': additivity,
        'principal_minimal': minimal,
        'key_inequalities': inequalities,
        'oracle_error': oracle_error,
    }


def _mahler(rng, seed, tol):
    product, bound, _ = fractional.mahler_product(convex.equilateral_triangle())
    ok = abs(product - 1.5) <= 1e-9 and product >= bound
    flagged = 0
    for _ in range(100):
        _, _, clean = fractional.mahler_product(convex.random_polytope(rng, dim=2, count=8))
        flagged += not clean
    return ok and flagged == 0, {'triangle': product, 'bound': bound, 'flagged': flagged}


ITEMS = OrderedDict([
    ('triangle-relative', _triangle_relative),
    ('triangle-euclidean', _triangle_euclidean),
    ('symmetric-self-gauge', _symmetric_self_gauge),
    ('difference-gauge', _difference_gauge),
    ('body-gauge', _body_gauge),
    ('bang', _bang),
    ('almost-parallel', _almost_parallel),
    ('oscillation', _oscillation),
    ('graph-cover', _graph_cover),
    ('constants', _constants),
    ('fractional-bound', _fractional_bound),
    ('ball-cut', _ball_cut),
    ('mahler', _mahler),
])


def verify_all(seed=0, only=None, tolerances=None):
    """Run the acceptance suite.

    :param int seed: root seed; item i draws from the stream (seed, i)
    :param list only: names of the items to run (default: all)
    :param dict tolerances: overrides of DEFAULT_TOLERANCES

    :return Summary: the per-item verdicts
    """

    names = list(ITEMS) if not only else list(only)
    unknown = [name for name in names if name not in ITEMS]
    if unknown:
        raise ParameterError('unknown suite items {0}; choose from {1}'.format(unknown, list(ITEMS)))

    tol = dict(DEFAULT_TOLERANCES)
    tol.update({name: value for name, value in (tolerances or {}).items() if name in DEFAULT_TOLERANCES})

    items = []
    for index, name in enumerate(ITEMS):
        if name not in names:
            continue
        rng = np.random.default_rng([seed, index])
        started = time.perf_counter()
        ok, detail = ITEMS[name](rng, seed, tol)
        items.append(Item(name, bool(ok), detail, time.perf_counter() - started))
    return Summary(seed, items)
