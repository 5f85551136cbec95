import math
import unittest

from bin.commands import ballcut
from bin.commands.ballcut import BallCutParams
from bin.commands.utils import convex

TAU0 = math.acos(0.25)


def _segment(tau):
    return tau - math.sin(tau) * math.cos(tau)


class TestBallCutParams(unittest.TestCase):

    def test_ballCutParams_fromTau0(self):

        # when
        p = BallCutParams(2, 6, tau0=TAU0)

        # then
        self.assertEqual((p.k, p.m), (1, 3))
        self.assertAlmostEqual(p.tau, math.pi / 3)
        self.assertAlmostEqual(p.rho, 0.5)
        self.assertEqual(repr(p), 'BallCutParams(k=1, m=3, rho={0!r})'.format(p.rho))

    def test_ballCutParams_fromRho(self):

        # when
        p = BallCutParams(1, 3, rho=0.5)

        # then
        self.assertAlmostEqual(p.tau0, TAU0)

    def test_ballCutParams_invalid(self):

        # expect
        for args, kwargs in (
            ((3, 3), {'rho': 0.5}),
            ((0, 3), {'rho': 0.5}),
            ((1.0, 3), {'rho': 0.5}),
            ((1, 3), {}),
            ((1, 3), {'rho': 1.5}),
            ((1, 3), {'rho': 0.0}),
            ((1, 3), {'rho': 0.5, 'tau0': 1.0}),
            ((1, 2), {'tau0': 1.0}),
            ((2, 3), {'tau0': TAU0}),
        ):
            with self.assertRaises(convex.ParameterError):
                BallCutParams(*args, **kwargs)


class TestActions(unittest.TestCase):

    def test_principalAction(self):

        # expect
        self.assertAlmostEqual(ballcut.principal_action(math.pi / 2), math.pi / 2)
        self.assertAlmostEqual(ballcut.principal_action(math.pi / 3), math.pi / 3 - math.sqrt(3) / 4)

    def test_principalAction_outOfRange(self):

        # expect
        for tau0 in (0.0, math.pi, -1.0):
            with self.assertRaises(convex.ParameterError):
                ballcut.principal_action(tau0)

    def test_capAction(self):

        # given
        p = BallCutParams(1, 3, rho=0.5)

        # expect
        self.assertAlmostEqual(ballcut.cap_action(p), 0.25 * _segment(math.pi / 3) + 0.75 * math.pi)

    def test_characteristicAction(self):

        # given
        p = BallCutParams(1, 3, rho=0.5)

        # expect
        self.assertAlmostEqual(ballcut.characteristic_action(p), 3 * 0.25 * _segment(math.pi / 3) + 0.75 * math.pi)
        self.assertLessEqual(ballcut.cap_action(p), ballcut.characteristic_action(p))

    def test_characteristicAction_principal(self):

        # given
        p = BallCutParams(1, 3, rho=1.0)

        # expect
        self.assertAlmostEqual(ballcut.characteristic_action(p), _segment(math.pi / 3))

    def test_capAction_notParams(self):

        # when
        with self.assertRaises(AssertionError) as context:
            ballcut.cap_action((1, 3))

        # then
        self.assertEqual(str(context.exception), "'p' must be a BallCutParams. Given: tuple")

    def test_arcAction_matchesClosedForm(self):

        for p in (BallCutParams(1, 3, rho=0.5), BallCutParams(2, 5, rho=0.7), BallCutParams(1, 4, rho=1.0)):

            # expect
            self.assertAlmostEqual(ballcut.arc_action(p), ballcut.characteristic_action(p), delta=1e-6)


class TestCapacity(unittest.TestCase):

    def test_admissibleFamily(self):

        # when
        family = ballcut.admissible_family(TAU0, mmax=12)

        # then
        self.assertTrue(family)
        for p in family:
            self.assertEqual(math.gcd(p.k, p.m), 1)
            self.assertLess(p.m, 13)
            self.assertTrue(0 < p.rho < 1)
            self.assertAlmostEqual(p.rho * math.cos(p.tau), 0.25)

    def test_admissibleFamily_kmax(self):

        # when
        family = ballcut.admissible_family(TAU0, kmax=1, mmax=12)

        # then
        self.assertEqual(sorted(p.m for p in family), list(range(3, 13)))

    def test_capCapacity_principalIsMinimal(self):

        for i in range(1, 98):
            tau0 = math.pi * i / 98

            # expect
            self.assertEqual(ballcut.cap_capacity(tau0), ballcut.principal_action(tau0))

    def test_capCapacity_increasesToPi(self):

        # given
        grid = [math.pi * i / 200 for i in range(1, 200)]

        # when
        capacities = [ballcut.cap_capacity(tau0) for tau0 in grid]

        # then
        self.assertTrue(all(a < b for a, b in zip(capacities, capacities[1:])))
        self.assertLess(ballcut.cap_capacity(1e-3), 1e-8)
        self.assertAlmostEqual(ballcut.cap_capacity(math.pi - 1e-3), math.pi, delta=1e-8)

    def test_verifyCutAdditivity(self):

        # when
        c1, c2, total, ok = ballcut.verify_cut_additivity(TAU0)

        # then
        self.assertTrue(ok)
        self.assertAlmostEqual(total, math.pi, places=12)
        self.assertAlmostEqual(c1, _segment(TAU0))
        self.assertAlmostEqual(c2, _segment(math.pi - TAU0))

    def test_verifyCutAdditivity_sweep(self):

        for i in range(1, 98):

            # expect
            self.assertTrue(ballcut.verify_cut_additivity(math.pi * i / 98)[3])

    def test_verifyKeyInequalities(self):

        # expect
        self.assertTrue(ballcut.verify_key_inequalities(100))

    def test_verifyKeyInequalities_smallGrid(self):

        # expect
        with self.assertRaises(convex.ParameterError):
            ballcut.verify_key_inequalities(1)

    def test_subadditivityGap(self):

        # expect
        self.assertEqual(ballcut.subadditivity_gap(0.25), (2.5, 4.0, 1.5))

    def test_subadditivityGap_outOfRange(self):

        # expect
        for r in (0.0, 1.0, 2.0):
            with self.assertRaises(convex.ParameterError):
                ballcut.subadditivity_gap(r)
