import unittest

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.seeding import make_rng
from . import factories
from .. import utils


class DrawPopulationTest(unittest.TestCase):

    def setUp(self):
        self.model = factories.UniformFactory(a=0.0, b=1.0)

    def test_same_seed_gives_same_population(self):
        first = utils.draw_population(self.model, 100, 42)
        second = utils.draw_population(self.model, 100, 42)
        np.testing.assert_array_equal(first.responses, second.responses)

    def test_single_unit(self):
        population = utils.draw_population(self.model, 1, 7)
        self.assertEqual(population.N, 1)
        self.assertTrue(0 < population.responses[0] < 1)

    def test_empty_population_is_rejected(self):
        with self.assertRaises(ValidationError):
            utils.draw_population(self.model, 0, 7)

    def test_longer_population_extends_shorter_one(self):
        short = utils.draw_population(self.model, 20, 3)
        long = utils.draw_population(self.model, 50, 3)
        np.testing.assert_array_equal(long.responses[:20], short.responses)

    def test_kolmogorov_distance_is_small(self):
        responses = np.sort(utils.draw_population(self.model, 100000, 11).responses)
        N = responses.size
        upper = np.arange(1, N + 1) / float(N) - responses
        lower = responses - np.arange(N) / float(N)
        self.assertLess(max(upper.max(), lower.max()), 0.01)

    def test_mean_of_draws_matches_first_moment(self):
        model = factories.TruncatedExponentialFactory()
        draws = utils.draw_responses(model, 10 ** 6, make_rng(5))
        se = draws.std(ddof=1) / np.sqrt(draws.size)
        self.assertLess(abs(draws.mean() - model.moment(1)), 5 * se)


class EvaluationHelpersTest(unittest.TestCase):

    def test_helpers_delegate_to_model(self):
        model = factories.UniformFactory(a=0.5, b=1.5)
        self.assertEqual(utils.density(model, 1.0), 1.0)
        self.assertAlmostEqual(utils.cdf(model, 0.8), 0.3, places=12)
        self.assertAlmostEqual(utils.moment(model, 1), 1.0, places=12)
