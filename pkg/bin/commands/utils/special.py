"""Gamma function and the sphere/ball measures built on it."""

import math

# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7
_LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2 * math.pi)


def _lanczos_sum(z):
    total = _LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(_LANCZOS_COEFFICIENTS[1:], start=1):
        total += coefficient / (z + i)
    return total


def log_gamma(x):
    """Return log|Gamma(x)|.

    :param float x: a real argument that is not a non-positive integer

    :return float: the logarithm of the absolute value of Gamma(x)
    """

    assert isinstance(x, (int, float)), "'x' must be a number. Given: " + type(x).__name__
    if x <= 0 and float(x).is_integer():
        raise ValueError('gamma has a pole at {0!r}'.format(x))

    if x < 0.5:
        # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return math.log(math.pi / abs(math.sin(math.pi * x))) - log_gamma(1 - x)

    z = x - 1
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def gamma(x):
    """Return Gamma(x), sign included.

    :param float x: a real argument that is not a non-positive integer

    :return float: Gamma(x)
    """

    assert isinstance(x, (int, float)), "'x' must be a number. Given: " + type(x).__name__
    if x <= 0 and float(x).is_integer():
        raise ValueError('gamma has a pole at {0!r}'.format(x))

    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1 - x))
    return math.exp(log_gamma(x))


def sphere_area(n):
    """Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2)."""

    return 2 * math.exp(0.5 * n * math.log(math.pi) - log_gamma(0.5 * n))


def ball_volume(n):
    """Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1). The 0-ball has volume 1."""

    if n == 0:
        return 1.0
    return math.exp(0.5 * n * math.log(math.pi) - log_gamma(0.5 * n + 1))
