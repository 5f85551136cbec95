"""Constants and bounds for fractional plank coverings.

The normal direction of a uniformly random hyperplane through the origin meets a fixed unit vector in a coordinate
with density (1 - x^2)^{(n-3)/2} / W_n, so N random width-delta planks cover the sphere about delta N / W_n times. The
same pushforward argument with m-dimensional cylinders gives the density rho_m on the projected ball.
"""

import math

import numpy as np
from scipy import integrate

from .utils import convex, messages, special
from .utils.convex import ParameterError


class FractionalParams(object):
    """Ambient dimension n, cylinder axis dimension m, covering multiplicity k and normal inner-product bound c."""

    def __init__(self, n=None, m=None, k=None, c=None):
        if n is not None and (not isinstance(n, int) or n < 2):
            raise ParameterError("'n' must be an integer >= 2. Given: {0!r}".format(n))
        if m is not None and (not isinstance(m, int) or m < 1):
            raise ParameterError("'m' must be an integer >= 1. Given: {0!r}".format(m))
        if n is not None and m is not None and m >= n:
            raise ParameterError("'m' must be less than 'n'. Given: m={0!r}, n={1!r}".format(m, n))
        if k is not None and (not isinstance(k, int) or k < 1):
            raise ParameterError("'k' must be an integer >= 1. Given: {0!r}".format(k))
        if c is not None and not (0 <= c <= 1):
            raise ParameterError("'c' must lie in [0, 1]. Given: {0!r}".format(c))
        self.n = n
        self.m = m
        self.k = k
        self.c = c


def W_constant(n):
    """Return W_n = Gamma((n - 1) / 2) Gamma(1 / 2) / Gamma(n / 2), the integral of (1 - x^2)^{(n-3)/2} on [-1, 1].

    :param int n: dimension, at least 2

    :return float: W_n; 2 for n = 3
    """

    if not isinstance(n, int) or n < 2:
        raise ParameterError("'n' must be an integer >= 2. Given: {0!r}".format(n))
    return math.exp(special.log_gamma((n - 1) / 2.0) + special.log_gamma(0.5) - special.log_gamma(n / 2.0))


def W_quadrature(n):
    """Adaptive quadrature of the W_n integral with the algebraic endpoint weight."""

    power = (n - 3) / 2.0
    value, _ = integrate.quad(lambda x: 1.0, -1, 1, weight='alg', wvar=(power, power), epsabs=1e-14, epsrel=1e-14)
    return value


def rho_density(m, x):
    """Return (2 pi^{m/2} / Gamma(m/2)) (1 - |x|^2)^{m/2 - 1}, the projected sphere density.

    :param int m: the cylinder axis dimension, at least 2
    :param x: a point of the projected unit ball

    :return float: the density
    """

    if not isinstance(m, int) or m < 2:
        raise ParameterError("'m' must be an integer >= 2. Given: {0!r}".format(m))
    radius_squared = float(np.sum(convex.as_vector(x) ** 2))
    if radius_squared > 1 + 1e-12:
        raise ParameterError('the density lives on the unit ball. Given |x| = {0!r}'.format(math.sqrt(radius_squared)))
    return special.sphere_area(m) * max(0.0, 1 - radius_squared) ** (m / 2.0 - 1)


def rho_integral(n, m, samples=200000, seed=0):
    """Monte-Carlo integral of rho_m over the unit ball of R^{n-m}; equals the area of S^{n-1}."""

    dim = n - m
    rng = np.random.default_rng(seed)
    directions = rng.normal(size=(samples, dim))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    radii = rng.random(samples) ** (1.0 / dim)
    radius_squared = radii ** 2
    values = special.sphere_area(m) * np.maximum(0.0, 1 - radius_squared) ** (m / 2.0 - 1)
    return float(values.mean() * special.ball_volume(dim))


def pushforward_density(n, m, samples=1000000, bins=20, seed=0):
    """Project uniform points of S^{n-1} to R^{n-m} and compare radial shell masses with rho_m.

    :param int n: ambient dimension
    :param int m: cylinder axis dimension
    :param int samples: number of sphere points (normalized Gaussians)
    :param int bins: number of radial shells on [0, 1]

    :return tuple: (shell centers, empirical mass fractions, exact mass fractions)
    """

    params = FractionalParams(n=n, m=m)
    dim = params.n - params.m
    rng = np.random.default_rng(seed)
    points = rng.normal(size=(samples, n))
    points /= np.linalg.norm(points, axis=1)[:, None]
    radii = np.linalg.norm(points[:, :dim], axis=1)

    edges = np.linspace(0, 1, bins + 1)
    counts, _ = np.histogram(radii, bins=edges)
    empirical = counts / float(samples)

    shell = special.sphere_area(dim)
    total = special.sphere_area(n)
    exact = np.array([
        integrate.quad(lambda r: rho_density(m, [r]) * shell * r ** (dim - 1), lo, hi)[0] / total
        for lo, hi in zip(edges[:-1], edges[1:])
    ])
    return 0.5 * (edges[:-1] + edges[1:]), empirical, exact


def cylinder_bound(n, m):
    """Return pi^{(n-m)/2} Gamma(m/2) / Gamma(n/2), the weighted cross-section bound for m-dimensional cylinders."""

    FractionalParams(n=n, m=m)
    if m < 2:
        raise ParameterError("'m' must be at least 2. Given: {0!r}".format(m))
    return math.exp(0.5 * (n - m) * math.log(math.pi) + special.log_gamma(m / 2.0) - special.log_gamma(n / 2.0))


def conjecture_cylinder_target(n, m):
    """The conjectured cross-section bound vol B^{n-m}; cylinder_bound reaches it for m = 2."""

    FractionalParams(n=n, m=m)
    return special.ball_volume(n - m)


def fractional_bang_bound(k, c):
    """Return 2 sqrt((c (k - 1) + 1) k), the width bound for k-fold coverings with pairwise normal products >= c."""

    params = FractionalParams(k=k, c=c)
    return 2 * math.sqrt((params.c * (params.k - 1) + 1) * params.k)


def sum_norm_lower(vectors, c, tol=1e-9):
    """Check |sum v_i| >= sqrt(k + c k (k - 1)) for k unit vectors with pairwise products >= c.

    :param vectors: Euclidean unit vectors
    :param float c: the pairwise lower bound
    :param float tol: tolerance on the preconditions and the comparison

    :return tuple: (lhs, rhs, ok)
    """

    vectors = convex.as_points(vectors, name='vectors')
    FractionalParams(c=c)
    if np.max(np.abs(np.linalg.norm(vectors, axis=1) - 1)) > tol:
        raise ParameterError('vectors must be Euclidean unit vectors')
    products = vectors @ vectors.T
    count = len(vectors)
    off_diagonal = products[~np.eye(count, dtype=bool)]
    if count > 1 and off_diagonal.min() < c - tol:
        raise ParameterError('pairwise products must be at least {0!r}. Found {1!r}'.format(c, float(off_diagonal.min())))
    lhs = float(np.linalg.norm(vectors.sum(axis=0)))
    rhs = math.sqrt(count + c * count * (count - 1))
    return lhs, rhs, bool(lhs >= rhs - tol)


def random_cone_vectors(count, dim, c, rng):
    """Random unit vectors with pairwise products at least c, by rejection around a random axis."""

    axis = rng.normal(size=dim)
    axis /= np.linalg.norm(axis)
    while True:
        spread = rng.uniform(0.2, 2.0)
        vectors = axis + spread * rng.normal(size=(count, dim))
        vectors /= np.linalg.norm(vectors, axis=1)[:, None]
        products = vectors @ vectors.T
        if count == 1 or products[~np.eye(count, dtype=bool)].min() >= c:
            return vectors


def mahler_product(K, tol=1e-9):
    """Probe vol K * vol (K - K)° >= (1 + 1/n)^n / n!; a failure is announced, not raised.

    :param ConvexBody K: a body in dimension 2 or 3

    :return tuple: (product, bound, ok)
    """

    assert isinstance(K, convex.ConvexBody), "'K' must be a ConvexBody. Given: " + type(K).__name__
    if K.dim not in (2, 3):
        raise convex.UnsupportedDimension('the product is computed in dimensions 2 and 3. Given: {0}'.format(K.dim))

    product = convex.volume(K) * convex.volume(convex.polar(convex.difference_body(K)))
    bound = (1 + 1.0 / K.dim) ** K.dim / math.factorial(K.dim)
    ok = bool(product >= bound - tol)
    if not ok:
        messages.alarm('volume product {0!r} is below {1!r}'.format(product, bound))
    return product, bound, ok


def plank_tightness_probe(n=3, count=2000, delta=0.01, surface_samples=2000, seed=0):
    """Cover the unit sphere with random centrally symmetric planks of width delta and measure the multiplicity.

    The expected multiplicity of each point is delta N / W_n; the least one cannot exceed it, which is why W_n cannot
    be improved.

    :return dict: minimum and mean multiplicity, the expectation, and ok (mean within 10% and minimum at most it)
    """

    params = FractionalParams(n=n)
    rng = np.random.default_rng(seed)
    normals = rng.normal(size=(count, params.n))
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    points = rng.normal(size=(surface_samples, params.n))
    points /= np.linalg.norm(points, axis=1)[:, None]

    multiplicities = np.sum(np.abs(points @ normals.T) <= delta / 2, axis=1)
    expected = delta * count / W_constant(params.n)
    minimum = float(multiplicities.min())
    mean = float(multiplicities.mean())
    return {
        'min': minimum,
        'mean': mean,
        'expected': expected,
        'ok': bool(abs(mean - expected) <= 0.1 * expected and minimum <= expected),
    }
