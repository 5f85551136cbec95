import math
import unittest

import mock
import numpy as np

from bin.commands import billiard
from bin.commands.utils import convex, files
from bin.commands.utils.convex import Gauge

SQUARE = convex.box(-1.0, 1.0)
DISK = convex.Ball([0.0, 0.0], 1.0)
TRIANGLE = convex.equilateral_triangle()
VERTICAL = [[0.0, 1.0], [0.0, -1.0]]


class TestTrajectory(unittest.TestCase):

    def test_trajectory_edges(self):

        # given
        T = billiard.Trajectory([[0, 0], [1, 0], [0, 1]])

        # expect
        np.testing.assert_array_equal(T.edges(), [[1, 0], [-1, 1], [0, -1]])
        self.assertEqual(T.dim, 2)
        self.assertIsNone(T.gauge_length)

    def test_trajectory_lengthFromGauge(self):

        # when
        T = billiard.Trajectory(VERTICAL, gauge=Gauge.euclidean(2))

        # then
        self.assertAlmostEqual(T.gauge_length, 4)

    def test_trajectory_tooFewPoints(self):

        # expect
        with self.assertRaises(convex.ParameterError):
            billiard.Trajectory([[0, 0]])

    def test_trajectoryLength(self):

        # given
        T = billiard.Trajectory([[0, 0], [3, 0], [3, 4]])

        # expect
        self.assertAlmostEqual(billiard.trajectory_length(T, Gauge.euclidean(2)), 12)
        self.assertAlmostEqual(billiard.trajectory_length(T, Gauge(SQUARE)), 3 + 4 + 4)

    def test_trajectoryLength_dimensionMismatch(self):

        # expect
        with self.assertRaises(convex.DimensionMismatch):
            billiard.trajectory_length(billiard.Trajectory(VERTICAL), Gauge.euclidean(3))

    def test_trajectoryLength_notATrajectory(self):

        # when
        with self.assertRaises(AssertionError) as context:
            billiard.trajectory_length(VERTICAL, Gauge.euclidean(2))

        # then
        self.assertEqual(str(context.exception), "'T' must be a Trajectory. Given: list")


class TestNoncoverable(unittest.TestCase):

    def test_isNoncoverable(self):

        # expect
        self.assertTrue(billiard.is_noncoverable(VERTICAL, SQUARE))
        self.assertFalse(billiard.is_noncoverable([[0, 0.5], [0, -0.5]], SQUARE))

    def test_segmentBoundCheck(self):

        # given
        T = billiard.Trajectory(VERTICAL)

        # expect
        self.assertAlmostEqual(billiard.segment_bound_check(T, SQUARE), 1)


class TestShortestTrajectory(unittest.TestCase):

    def test_shortestTrajectory_squareEuclidean(self):

        # when
        result = billiard.shortest_trajectory(SQUARE, Gauge.euclidean(2), starts=8)

        # then
        self.assertAlmostEqual(result.gauge_length, 4, delta=1e-3)
        self.assertGreaterEqual(result.lambda_, 1 - 1e-7)
        self.assertEqual(result.starts, 8)
        for point in result.points:
            self.assertTrue(SQUARE.contains(point, 1e-6))

    def test_shortestTrajectory_squareDifferenceGauge(self):

        # when
        result = billiard.shortest_trajectory(SQUARE, Gauge.difference(SQUARE), starts=8)

        # then
        self.assertAlmostEqual(result.gauge_length, 2, delta=1e-3)
        self.assertGreaterEqual(billiard.segment_bound_check(result, SQUARE), 1 - 1e-3)

    def test_shortestTrajectory_deterministic(self):

        # when
        first = billiard.shortest_trajectory(SQUARE, Gauge.euclidean(2), starts=2, seed=5)
        second = billiard.shortest_trajectory(SQUARE, Gauge.euclidean(2), starts=2, seed=5)

        # then
        np.testing.assert_array_equal(first.points, second.points)
        self.assertEqual(first.gauge_length, second.gauge_length)

    def test_shortestTrajectory_dimensionMismatch(self):

        # expect
        with self.assertRaises(convex.DimensionMismatch):
            billiard.shortest_trajectory(SQUARE, Gauge.euclidean(3))

    def test_shortestTrajectory_noStarts(self):

        # expect
        with self.assertRaises(convex.ParameterError):
            billiard.shortest_trajectory(SQUARE, Gauge.euclidean(2), starts=0)

    def test_shortestTrajectory_startsNotAnInt(self):

        # when
        with self.assertRaises(AssertionError) as context:
            billiard.shortest_trajectory(SQUARE, Gauge.euclidean(2), starts=2.0)

        # then
        self.assertEqual(str(context.exception), "'starts' must be an int. Given: float")

    def test_shortestTrajectory_diskEuclidean(self):

        # when
        result = billiard.shortest_trajectory(DISK, Gauge.euclidean(2), starts=64, seed=0)

        # then
        self.assertAlmostEqual(result.gauge_length, 4, delta=1e-3)
        self.assertEqual(len(result.points), 2)
        for point in result.points:
            self.assertLessEqual(abs(DISK.boundary_excess(point)), 1e-6)
        certificate = billiard.verify_reflection(result, DISK, Gauge.euclidean(2), tol=1e-4)
        self.assertLessEqual(certificate.max_violation, 1e-4)

    def test_shortestTrajectory_triangleEuclidean(self):

        # when
        result = billiard.shortest_trajectory(TRIANGLE, Gauge.euclidean(2), starts=16)

        # then
        self.assertAlmostEqual(result.gauge_length, math.sqrt(3), delta=1e-3)

    def test_shortestTrajectory_simplexDifferenceGauge(self):

        # given
        S = convex.simplex(3)

        # when
        result = billiard.shortest_trajectory(S, Gauge.difference(S), starts=16)

        # then
        self.assertAlmostEqual(result.gauge_length, 4.0 / 3, delta=1e-2)

    def test_shortestTrajectory_scaledBody(self):

        # when
        triangle = billiard.shortest_trajectory(TRIANGLE.scaled(2.5), Gauge.euclidean(2), starts=16)
        disk = billiard.shortest_trajectory(DISK.scaled(0.5), Gauge.euclidean(2), starts=16)

        # then
        self.assertAlmostEqual(triangle.gauge_length, 2.5 * math.sqrt(3), delta=2.5e-3)
        self.assertAlmostEqual(disk.gauge_length, 2, delta=1e-3)

    def test_shortestTrajectory_scaledGauge(self):

        # given
        gauge = Gauge.from_body(SQUARE.scaled(4.0))

        # when
        result = billiard.shortest_trajectory(SQUARE, gauge, starts=8)

        # then
        self.assertAlmostEqual(result.gauge_length, 4 / 4.0, delta=1e-3)

    def test_shortestTrajectory_outputsSatisfyReflection(self):

        # given
        rng = np.random.default_rng(2024)
        bodies = [convex.random_polytope(rng, dim=2, count=8) for _ in range(3)]

        for index, K in enumerate(bodies):
            for g in (Gauge.difference(K), Gauge.from_body(K), Gauge.euclidean(2)):

                # when
                result = billiard.shortest_trajectory(K, g, starts=8, seed=index)

                # then
                scale = max(1.0, float(np.max(np.abs(result.points))))
                for point in result.points:
                    self.assertLessEqual(abs(K.boundary_excess(point)), 1e-6 * scale)
                certificate = billiard.verify_reflection(result, K, g, tol=1e-4)
                self.assertLessEqual(certificate.max_violation, 1e-4)

    @mock.patch('bin.commands.billiard.shortest_trajectory')
    def test_capacity(self, mock_shortest):

        # given
        mock_shortest.return_value.gauge_length = 2.5
        g = Gauge.euclidean(2)

        # when
        capacity = billiard.capacity_KxBpolar(SQUARE, g, starts=3, seed=7)

        # then
        self.assertEqual(capacity, 2.5)
        mock_shortest.assert_called_once_with(SQUARE, g, starts=3, seed=7)


class TestBilliardProblem(unittest.TestCase):

    def test_prune_interiorPoint(self):

        # given
        problem = billiard._BilliardProblem(DISK, Gauge.euclidean(2))
        points = np.array([[-0.6, -0.8], [0.2, 0.1], [0.6, 0.8]])

        # when
        pruned = problem.prune(points, problem.lambda_(points))

        # then
        np.testing.assert_allclose(pruned, [[-0.6, -0.8], [0.6, 0.8]])

    def test_prune_keepsNeededPoints(self):

        # given
        problem = billiard._BilliardProblem(SQUARE, Gauge.euclidean(2))
        points = np.array([[-1.0, 0.0], [1.0, 0.5], [0.0, 1.0]])

        # when
        pruned = problem.prune(points, problem.lambda_(points))

        # then
        self.assertEqual(len(pruned), 2)
        self.assertGreaterEqual(problem.lambda_(pruned), problem.lambda_(points) * (1 - 1e-9))

    def test_onBoundary(self):

        # given
        problem = billiard._BilliardProblem(DISK, Gauge.euclidean(2))

        # expect
        self.assertTrue(problem.on_boundary(np.array([[1.0, 0.0], [-1.0, 0.0]])))
        self.assertFalse(problem.on_boundary(np.array([[1.0, 0.0], [0.5, 0.0]])))


class TestVerifyReflection(unittest.TestCase):

    def test_verifyReflection_bouncingBetweenSides(self):

        # when
        certificate = billiard.verify_reflection(billiard.Trajectory(VERTICAL), SQUARE, Gauge.euclidean(2))

        # then
        self.assertLessEqual(certificate.max_violation, 1e-9)
        np.testing.assert_allclose(certificate.momenta, [[0, -1], [0, 1]], atol=1e-9)
        np.testing.assert_allclose(certificate.multipliers, [2, 2], atol=1e-9)

    def test_verifyReflection_slantedIsNotATrajectory(self):

        # when
        certificate = billiard.verify_reflection(
            billiard.Trajectory([[0.0, 1.0], [0.5, -1.0]]), SQUARE, Gauge.euclidean(2)
        )

        # then
        self.assertAlmostEqual(certificate.max_violation, 1 / np.sqrt(4.25), places=6)

    def test_verifyReflection_polygonalGauge(self):

        # given
        T = billiard.Trajectory(VERTICAL)

        # when
        certificate = billiard.verify_reflection(T, SQUARE, Gauge.difference(SQUARE))

        # then
        self.assertLessEqual(certificate.max_violation, 1e-9)

    def test_verifyReflection_offBoundary(self):

        # expect
        with self.assertRaises(convex.BoundaryError):
            billiard.verify_reflection(billiard.Trajectory([[0, 0.5], [0, -1]]), SQUARE, Gauge.euclidean(2))


class TestJson(unittest.TestCase):

    def test_trajectoryToJson(self):

        # given
        T = billiard.Trajectory(VERTICAL, gauge=Gauge.euclidean(2))

        # when
        value = billiard.trajectory_to_json(T, violation=0.0)

        # then
        self.assertEqual(value, {'points': VERTICAL, 'length': 4.0, 'lambda': None, 'violation': 0.0})

    def test_trajectoryFromJson(self):

        # when
        T = billiard.trajectory_from_json({'points': VERTICAL, 'length': 4})

        # then
        np.testing.assert_array_equal(T.points, VERTICAL)
        self.assertEqual(T.gauge_length, 4.0)

    def test_trajectoryFromJson_malformed(self):

        # expect
        for value in ([], {'length': 1}, {'points': [[0, 0], ['a', 1]]}, {'points': VERTICAL, 'length': 'long'}):
            with self.assertRaises(files.InputError):
                billiard.trajectory_from_json(value)
