"""Capacities of the two caps of the unit ball of C^n cut by the hyperplane Re z_1 = cos tau0.

A closed characteristic on the cap boundary runs along the sphere, where every coordinate rotates, and along the
flat face, where only z_1 moves. Starting on the cut with modulus rho in z_1 it closes after m turns of angle
2 tau, tau = pi k / m, with rho cos tau = cos tau0. The least action belongs to the broken principal characteristic
with rho = 1, so the two cap capacities add up to pi.
"""

import math

import numpy as np

from .utils.convex import ParameterError

DEFAULT_KMAX = 40
DEFAULT_MMAX = 40
ARC_STEPS = 10000


class BallCutParams(object):
    """Winding data (k, m), reduced by their gcd, with the z_1 modulus rho and the cut parameter tau0.

    Either rho or tau0 may be given; the other follows from rho cos tau = cos tau0.
    """

    def __init__(self, k, m, rho=None, tau0=None):
        if not (isinstance(k, int) and isinstance(m, int)) or k < 1 or m <= k:
            raise ParameterError('winding needs integers 1 <= k < m. Given: k={0!r}, m={1!r}'.format(k, m))
        divisor = math.gcd(k, m)
        self.k = k // divisor
        self.m = m // divisor
        self.tau = math.pi * self.k / self.m
        cosine = math.cos(self.tau)

        if rho is None:
            if tau0 is None:
                raise ParameterError('either rho or tau0 is needed')
            if abs(cosine) < 1e-12:
                raise ParameterError('tau = pi/2 does not determine rho from tau0')
            rho = math.cos(tau0) / cosine
        elif tau0 is not None and abs(rho * cosine - math.cos(tau0)) > 1e-12:
            raise ParameterError('rho cos tau must equal cos tau0. Given rho={0!r}, tau0={1!r}'.format(rho, tau0))

        if not (0 < rho <= 1):
            raise ParameterError('rho must lie in (0, 1]. Given: {0!r}'.format(rho))
        self.rho = float(rho)
        self.tau0 = float(tau0) if tau0 is not None else math.acos(self.rho * cosine)

    def __repr__(self):
        return 'BallCutParams(k={0}, m={1}, rho={2!r})'.format(self.k, self.m, self.rho)


def _segment_area(tau):
    return tau - math.sin(tau) * math.cos(tau)


def principal_action(tau0):
    """tau0 - sin tau0 cos tau0: the broken principal characteristic, one z_1 circular segment."""

    _check_tau0(tau0)
    return _segment_area(tau0)


def cap_action(p):
    """Return k (rho^2 (tau - sin tau cos tau) + pi (1 - rho^2)).

    This is a lower bound of the action of the (k, m) characteristic, whose z_1 loop repeats m >= k times.
    """

    assert isinstance(p, BallCutParams), "'p' must be a BallCutParams. Given: " + type(p).__name__
    return p.k * (p.rho ** 2 * _segment_area(p.tau) + math.pi * (1 - p.rho ** 2))


def characteristic_action(p):
    """Action of the whole closed orbit: m rho^2 (tau - sin tau cos tau) + k pi (1 - rho^2); one turn when rho = 1."""

    assert isinstance(p, BallCutParams), "'p' must be a BallCutParams. Given: " + type(p).__name__
    if p.rho >= 1:
        return _segment_area(p.tau)
    return p.m * p.rho ** 2 * _segment_area(p.tau) + p.k * math.pi * (1 - p.rho ** 2)


def _closed_area(z):
    following = np.roll(z, -1)
    return 0.5 * float(np.sum(z.real * following.imag - following.real * z.imag))


def arc_action(p, steps=ARC_STEPS):
    """Integrate 1/2 of the loop integral of (x dy - y dx) over every complex coordinate of the orbit.

    The orbit is sampled with `steps` points per arc and per chord and closed polygonally (trapezoid rule).
    """

    assert isinstance(p, BallCutParams), "'p' must be a BallCutParams. Given: " + type(p).__name__
    turns = 1 if p.rho >= 1 else p.m
    angles = np.linspace(-p.tau, p.tau, steps + 1)
    chord = np.linspace(1, 0, steps + 1)[1:-1]

    arc = p.rho * np.exp(1j * angles)
    flat = p.rho * (math.cos(p.tau) + 1j * math.sin(p.tau) * (2 * chord - 1))
    first = np.concatenate([np.concatenate([arc, flat]) for _ in range(turns)])

    modulus = math.sqrt(max(0.0, 1 - p.rho ** 2))
    other = []
    for turn in range(turns):
        phase = 2 * p.tau * turn
        other.append(modulus * np.exp(1j * (phase + angles + p.tau)))
        other.append(np.full(len(flat), modulus * np.exp(1j * (phase + 2 * p.tau))))
    second = np.concatenate(other)
    return _closed_area(first) + _closed_area(second)


def _check_tau0(tau0):
    if not (0 < tau0 < math.pi):
        raise ParameterError('tau0 must lie in (0, pi). Given: {0!r}'.format(tau0))


def admissible_family(tau0, kmax=DEFAULT_KMAX, mmax=DEFAULT_MMAX):
    """Characteristics with 1 <= k < m <= mmax, k <= kmax, gcd 1 and rho = cos tau0 / cos tau in (0, 1)."""

    _check_tau0(tau0)
    family = []
    for m in range(2, mmax + 1):
        for k in range(1, min(kmax, m - 1) + 1):
            if math.gcd(k, m) != 1:
                continue
            cosine = math.cos(math.pi * k / m)
            if abs(cosine) < 1e-12:
                continue
            rho = math.cos(tau0) / cosine
            if 0 < rho < 1:
                family.append(BallCutParams(k, m, rho=rho))
    return family


def cap_capacity(tau0, kmax=DEFAULT_KMAX, mmax=DEFAULT_MMAX):
    """Return the least action over the principal characteristic and the admissible (k, m) family.

    :param float tau0: the cut parameter in (0, pi)
    :param int kmax: largest k
    :param int mmax: largest m

    :return float: the cap capacity
    """

    actions = [principal_action(tau0)] + [cap_action(p) for p in admissible_family(tau0, kmax, mmax)]
    return min(actions)


def verify_cut_additivity(tau0, tol=1e-9):
    """Return (c1, c2, c1 + c2, ok) for the two caps, ok iff the sum is pi within tol."""

    first = cap_capacity(tau0)
    second = cap_capacity(math.pi - tau0)
    total = first + second
    return first, second, total, bool(abs(total - math.pi) <= tol)


def verify_key_inequalities(grid=100, tol=1e-12):
    """Check pi (1 - cos x) >= x - sin x on [0, pi], and the action inequality on a (tau, tau0) grid.

    The action inequality rho^2 (tau - sin tau cos tau) + pi (1 - rho^2) >= tau0 - sin tau0 cos tau0 is checked
    wherever rho = cos tau0 / cos tau lies in (0, 1].

    :param int grid: points per axis

    :return bool: True iff no violation beyond tol
    """

    if grid < 2:
        raise ParameterError("'grid' must be at least 2. Given: {0!r}".format(grid))

    x = np.linspace(0, math.pi, grid * grid)
    if np.any(math.pi * (1 - np.cos(x)) < x - np.sin(x) - tol):
        return False

    interior = np.linspace(0, math.pi, grid + 2)[1:-1]
    tau, tau0 = np.meshgrid(interior, interior, indexing='ij')
    cosine = np.cos(tau)
    usable = np.abs(cosine) > 1e-12
    rho = np.where(usable, np.cos(tau0) / np.where(usable, cosine, 1.0), -1.0)
    admissible = usable & (rho > 0) & (rho <= 1)
    lhs = rho ** 2 * (tau - np.sin(tau) * cosine) + math.pi * (1 - rho ** 2)
    rhs = tau0 - np.sin(tau0) * np.cos(tau0)
    return not bool(np.any(admissible & (lhs < rhs - tol)))


def subadditivity_gap(r):
    """Return (2 + 2r, 4, 2 - 2r): the capacity bound of the two pieces, the ball product capacity, and the gap."""

    if not (0 < r < 1):
        raise ParameterError("'r' must lie in (0, 1). Given: {0!r}".format(r))
    parts_sum = (2 - 2 * r) + 4 * r
    whole = 4.0
    return parts_sum, whole, whole - parts_sum
