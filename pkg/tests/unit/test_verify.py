import math
import unittest
from collections import OrderedDict

import colorama
import mock

from bin.commands import verify
from bin.commands.utils import convex


def _passing(rng, seed, tol):
    return True, {'draw': float(rng.random()), 'seed': seed}


def _failing(rng, seed, tol):
    return False, {'tolerance': tol['billiard']}


class TestVerifyAll(unittest.TestCase):

    def setUp(self):
        self.patcher = mock.patch.object(verify, 'ITEMS', OrderedDict([('first', _passing), ('second', _failing)]))
        self.patcher.start()

    def tearDown(self):
        self.patcher.stop()

    def test_verifyAll(self):

        # when
        summary = verify.verify_all(seed=5)

        # then
        self.assertFalse(summary.ok)
        self.assertEqual([item.name for item in summary.items], ['first', 'second'])
        self.assertEqual(summary.items[0].detail['seed'], 5)
        self.assertEqual(summary.items[1].detail, {'tolerance': 1e-3})

    def test_verifyAll_only(self):

        # when
        summary = verify.verify_all(only=['first'])

        # then
        self.assertTrue(summary.ok)
        self.assertEqual(len(summary.items), 1)

    def test_verifyAll_streamsFollowItemOrder(self):

        # when
        alone = verify.verify_all(seed=1, only=['first'])
        together = verify.verify_all(seed=1)

        # then
        self.assertEqual(alone.items[0].detail, together.items[0].detail)

    def test_verifyAll_deterministic(self):

        # expect
        self.assertEqual(verify.verify_all(seed=3).to_json(), verify.verify_all(seed=3).to_json())
        self.assertNotEqual(verify.verify_all(seed=3).to_json(), verify.verify_all(seed=4).to_json())

    def test_verifyAll_toleranceOverrides(self):

        # when
        summary = verify.verify_all(tolerances={'billiard': 0.5, 'reflection': 2.0})

        # then
        self.assertEqual(summary.items[1].detail, {'tolerance': 0.5})

    def test_verifyAll_unknownItem(self):

        # when
        with self.assertRaises(convex.ParameterError) as context:
            verify.verify_all(only=['first', 'third'])

        # then
        self.assertEqual(
            context.exception.message, "unknown suite items ['third']; choose from ['first', 'second']"
        )

    def test_summary_toJson(self):

        # when
        report = verify.verify_all(seed=2).to_json()

        # then
        self.assertEqual(report['seed'], 2)
        self.assertFalse(report['ok'])
        self.assertEqual(report['items'][1], {'name': 'second', 'ok': False, 'detail': {'tolerance': 1e-3}})
        self.assertNotIn('seconds', report['items'][0])


class TestSummaryTable(unittest.TestCase):

    def test_table(self):

        # setup
        summary = verify.Summary(0, [verify.Item('bang', True, {}, 1.5), verify.Item('mahler', False, {}, 0.25)])

        # when
        table = summary.table()

        # then
        self.assertEqual(table.split('\n'), [
            'bang    ' + colorama.Fore.GREEN + 'pass' + colorama.Fore.RESET + '      1.50s',
            'mahler  ' + colorama.Fore.RED + 'FAIL' + colorama.Fore.RESET + '      0.25s',
            'total   FAIL      1.75s',
        ])


class TestItems(unittest.TestCase):

    def test_itemNames(self):

        # expect
        self.assertEqual(list(verify.ITEMS), [
            'triangle-relative',
            'triangle-euclidean',
            'symmetric-self-gauge',
            'difference-gauge',
            'body-gauge',
            'bang',
            'almost-parallel',
            'oscillation',
            'graph-cover',
            'constants',
            'fractional-bound',
            'ball-cut',
            'mahler',
        ])

    def test_fractionalBound(self):

        # when
        summary = verify.verify_all(seed=0, only=['fractional-bound'])

        # then
        self.assertTrue(summary.ok)
        self.assertEqual(summary.items[0].detail, {'failures': 0, 'endpoints': True})

    def test_ballCut(self):

        # when
        summary = verify.verify_all(seed=0, only=['ball-cut'])

        # then
        detail = summary.items[0].detail
        self.assertTrue(summary.ok)
        self.assertLessEqual(detail['additivity_error'], 1e-9)
        self.assertTrue(detail['principal_minimal'])

    @mock.patch('bin.commands.billiard.shortest_trajectory')
    def test_triangleRelative(self, mock_shortest):

        # setup
        mock_shortest.return_value.gauge_length = 1.5004

        # when
        summary = verify.verify_all(seed=7, only=['triangle-relative'])

        # then
        self.assertTrue(summary.ok)
        self.assertEqual(mock_shortest.call_args[1], {'starts': verify.FIXTURE_STARTS, 'seed': 7})

    @mock.patch('bin.commands.billiard.shortest_trajectory')
    def test_triangleEuclidean_outsideTolerance(self, mock_shortest):

        # setup
        mock_shortest.return_value.gauge_length = math.sqrt(3) + 0.01

        # when
        summary = verify.verify_all(only=['triangle-euclidean'])

        # then
        self.assertFalse(summary.ok)
