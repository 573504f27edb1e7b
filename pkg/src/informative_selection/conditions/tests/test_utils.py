import unittest

import mock
import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.designs.tests import factories as design_factories
from informative_selection.designs.utils import enumerate_support
from informative_selection.designs.models import SimpleRandomSampling
from informative_selection.seeding import make_rng
from informative_selection.superpop.tests.factories import PopulationFactory, UniformFactory
from ..models import ConditionEntry
from .. import utils

Verdicts = ConditionEntry.Verdicts


class EmptySampleBoundTest(unittest.TestCase):

    def test_bound_values(self):
        self.assertAlmostEqual(utils.empty_sample_bound(10, 5), 5.0 / 81, places=12)
        self.assertAlmostEqual(utils.empty_sample_bound(100, 100), 100.0 / 9801, places=12)

    def test_bound_needs_more_than_one_expected_unit(self):
        with self.assertRaises(ValueError):
            utils.empty_sample_bound(1, 0.5)

    def test_bernoulli_empty_frequency_respects_bound(self):
        N = 100
        for expected in (5, 10, 20):
            p = expected / float(N)
            design = design_factories.BernoulliFactory(p=p)
            population = PopulationFactory(N=N)
            rng = make_rng(expected)
            empty = sum(design.draw(population, rng).is_empty for _ in range(10000)) / 10000.0
            self.assertLessEqual(empty, utils.empty_sample_bound(N * p, N * p * (1 - p)))


class CovarianceIdentityTest(unittest.TestCase):

    def test_spot_values(self):
        closed, enumerated = utils.srswor_cov_identity(4, 2)
        self.assertAlmostEqual(closed, -1.0 / 12, places=15)
        self.assertAlmostEqual(enumerated, -1.0 / 12, places=15)
        self.assertEqual(utils.srswor_cov_identity(2, 2), (0.0, 0.0))
        closed, enumerated = utils.srswor_cov_identity(6, 2)
        self.assertAlmostEqual(closed, -2.0 / 45, places=15)
        self.assertAlmostEqual(enumerated, -2.0 / 45, places=15)

    def test_closed_form_matches_enumeration(self):
        for N in range(2, 13):
            for n in range(1, N + 1):
                closed, enumerated = utils.srswor_cov_identity(N, n)
                self.assertLess(abs(closed - enumerated), 1e-12)

    def test_closed_form_matches_design_support(self):
        population = PopulationFactory(N=6)
        support = enumerate_support(SimpleRandomSampling(n=2), population)
        both = sum(probability for indicator, probability in support if indicator.counts[0] and indicator.counts[1])
        first = sum(probability for indicator, probability in support if indicator.counts[0])
        self.assertAlmostEqual(both - first ** 2, utils.srswor_cov_identity(6, 2)[0], places=12)

    def test_arguments_out_of_range(self):
        with self.assertRaises(ValueError):
            utils.srswor_cov_identity(1, 1)
        with self.assertRaises(ValueError):
            utils.srswor_cov_identity(5, 6)


class VanishingVerdictTest(unittest.TestCase):
    sizes = [100, 400, 1600]

    def test_decaying_sequence_passes(self):
        estimates = [1.0 / N for N in self.sizes]
        verdict, fit = utils.vanishing_verdict(self.sizes, estimates, [1e-6] * 3)
        self.assertEqual(verdict, Verdicts.PASS)
        self.assertAlmostEqual(fit.slope, -1.0, delta=0.01)

    def test_constant_sequence_fails(self):
        verdict, _ = utils.vanishing_verdict(self.sizes, [0.04] * 3, [0.001] * 3)
        self.assertEqual(verdict, Verdicts.FAIL)

    def test_zero_sequence_passes(self):
        verdict, fit = utils.vanishing_verdict(self.sizes, [0.0] * 3, [0.0] * 3)
        self.assertEqual(verdict, Verdicts.PASS)
        self.assertIsNone(fit)

    def test_noise_within_standard_errors_passes(self):
        verdict, _ = utils.vanishing_verdict(self.sizes, [0.003, 0.001, 0.002], [0.001] * 3)
        self.assertEqual(verdict, Verdicts.PASS)

    def test_dominating_standard_errors_are_inconclusive(self):
        verdict, _ = utils.vanishing_verdict(self.sizes, [0.01] * 3, [0.05] * 3)
        self.assertEqual(verdict, Verdicts.INCONCLUSIVE)

    def test_small_dominating_standard_errors_pass(self):
        # noise below VANISHING_THRESHOLD already resolves the estimate as vanishing
        verdict, _ = utils.vanishing_verdict(self.sizes, [0.004] * 3, [0.005] * 3)
        self.assertEqual(verdict, Verdicts.PASS)

    def test_stability(self):
        self.assertTrue(utils.is_stable([0.5, 0.3, 0.301, 0.299]))
        self.assertFalse(utils.is_stable([0.3, 0.3, 0.5]))
        self.assertFalse(utils.is_stable([0.0, 0.0]))


class CheckA4Test(unittest.TestCase):
    sizes = [100, 400, 1600]

    def setUp(self):
        self.model = UniformFactory()

    def test_bernoulli_passes(self):
        entry = utils.check_A4(design_factories.BernoulliFactory(), self.model, self.sizes, 200, 1)
        self.assertEqual(entry.verdict, Verdicts.PASS)
        self.assertLess(entry.slope, -0.5)

    def test_fixed_size_passes(self):
        design = design_factories.SimpleRandomSamplingFactory(n=None, fraction=0.3)
        entry = utils.check_A4(design, self.model, self.sizes, 200, 2)
        self.assertEqual(entry.verdict, Verdicts.PASS)
        self.assertEqual(entry.estimates, [0.0] * 3)

    def test_pathological_poisson_fails(self):
        entry = utils.check_A4(design_factories.PoissonPathologicalFactory(), self.model, self.sizes, 200, 3)
        self.assertEqual(entry.verdict, Verdicts.FAIL)
        for estimate in entry.estimates:
            self.assertLess(abs(estimate - 0.04), 0.005)

    def test_dependence_on_responses_is_logged(self):
        design = design_factories.LengthBiasedPoissonFactory()
        with mock.patch.object(utils.logger, 'warning') as warning:
            utils.check_A4(design, self.model, self.sizes, 1000, 4)
        self.assertTrue(any('depends on the responses' in call[0][0] for call in warning.call_args_list))

    def test_grid_needs_three_sizes(self):
        with self.assertRaises(ValueError):
            utils.check_A4(design_factories.BernoulliFactory(), self.model, [100, 400], 200, 1)

    def test_with_replacement_is_rejected(self):
        with self.assertRaises(ValidationError):
            utils.check_A4(design_factories.PpsWithReplacementFactory(), self.model, self.sizes, 200, 1)


class CheckA0Test(unittest.TestCase):

    def test_length_biased_passes(self):
        design = design_factories.LengthBiasedPoissonFactory()
        entries = utils.check_A0(design, UniformFactory(), [0.8, 1.2], [100, 400, 1600], 400, 5)
        self.assertEqual([entry.condition for entry in entries], ['A0.1', 'A0.2'])
        self.assertTrue(all(entry.passed for entry in entries))

    def test_design_without_limit_fails(self):
        design = design_factories.ClusterSplitFactory()
        entries = utils.check_A0(design, UniformFactory(a=0.0, b=1.0), [0.5], [50, 100], 100, 6)
        self.assertEqual(entries[1].verdict, Verdicts.FAIL)
        self.assertEqual(entries[1].details['reason'], 'no limit weight')


class CheckA3Test(unittest.TestCase):
    sizes = [50, 200, 800]

    def test_length_biased_passes(self):
        design = design_factories.LengthBiasedPoissonFactory()
        entries = utils.check_A3(design, UniformFactory(), [(0.8, 1.2)], self.sizes, 200, 7)
        self.assertEqual([entry.condition for entry in entries], ['A3.2', 'A3.3', 'A3.4', 'A3.5'])
        for entry in entries:
            self.assertEqual(entry.verdict, Verdicts.PASS, entry.condition)

    def test_bernoulli_passes(self):
        entries = utils.check_A3(design_factories.BernoulliFactory(), UniformFactory(), [(0.8, 1.2)],
                                 self.sizes, 200, 8)
        for entry in entries:
            self.assertEqual(entry.verdict, Verdicts.PASS, entry.condition)

        covariance = entries[1]
        self.assertEqual(len(covariance.inclusion), 1)
        self.assertEqual(covariance.inclusion[0].reps, 200)
        self.assertAlmostEqual(covariance.inclusion[0].mprime_12, 0.3, delta=0.15)
        self.assertTrue(all(not entry.inclusion for entry in entries if entry is not covariance))

    def test_cluster_covariance_fails(self):
        design = design_factories.ClusterSplitFactory()
        entries = dict((entry.condition, entry) for entry in utils.check_A3(
            design, UniformFactory(a=0.0, b=1.0), [(0.1, 0.2)], self.sizes, 200, 9))
        self.assertEqual(entries['A3.3'].verdict, Verdicts.FAIL)
        self.assertGreater(entries['A3.3'].estimates[-1], 0.2)

    def test_with_replacement_is_rejected(self):
        with self.assertRaises(ValidationError):
            utils.check_A3(design_factories.PpsWithReplacementFactory(), UniformFactory(), [(1.0, 1.0)],
                           self.sizes, 200, 1)


class CheckA1Test(unittest.TestCase):

    def test_cluster_covariance_integral_fails(self):
        design = design_factories.ClusterSplitFactory()
        entries = utils.check_A1_integrals(design, UniformFactory(a=0.0, b=1.0), [50, 100, 200], 10, 200, 10)
        covariance = entries[0]
        self.assertEqual(covariance.condition, 'A1.1')
        self.assertEqual(covariance.verdict, Verdicts.FAIL)
        for estimate in covariance.estimates:
            self.assertLess(abs(estimate - 0.04), 0.01)

    def test_bernoulli_covariance_integral_passes(self):
        entries = utils.check_A1_integrals(design_factories.BernoulliFactory(), UniformFactory(),
                                           [50, 200, 800], 3, 400, 11)
        self.assertEqual(entries[0].verdict, Verdicts.PASS)
        self.assertEqual([entry.condition for entry in entries], ['A1.1', 'A1.2', 'A1.3', 'A1.5'])

    def test_pps_second_moment_decays(self):
        design = design_factories.PpsWithReplacementFactory()
        entries = utils.check_A1_integrals(design, UniformFactory(), [50, 200, 800], 3, 200, 12)
        second_moment = entries[2]
        self.assertEqual(second_moment.condition, 'A1.3')
        self.assertEqual(second_moment.verdict, Verdicts.PASS)
        self.assertAlmostEqual(second_moment.slope, -1.0, delta=0.2)


class CheckA2Test(unittest.TestCase):
    sizes = [100, 400, 1600]

    def test_bernoulli_passes(self):
        entries = utils.check_A2(design_factories.BernoulliFactory(), UniformFactory(), [1.0],
                                 self.sizes, 200, 13)
        self.assertEqual([entry.condition for entry in entries], ['A2.1', 'A2.2', 'A2.3'])
        for entry in entries:
            self.assertEqual(entry.verdict, Verdicts.PASS, entry.condition)

    def test_cluster_variance_fails(self):
        design = design_factories.ClusterSplitFactory()
        entries = utils.check_A2(design, UniformFactory(a=0.0, b=1.0), [0.3], self.sizes, 200, 14)
        self.assertEqual(entries[0].verdict, Verdicts.FAIL)
        self.assertGreater(entries[0].estimates[-1], 0.01)

    def test_fixed_size_never_empty(self):
        design = design_factories.SimpleRandomSamplingFactory(n=None, fraction=0.3)
        entries = utils.check_A2(design, UniformFactory(), [1.0], self.sizes, 100, 15)
        self.assertEqual(entries[2].estimates, [0.0] * 3)
        self.assertEqual(entries[2].verdict, Verdicts.PASS)

    def test_alpha_grid_is_required(self):
        with self.assertRaises(ValueError):
            utils.check_A2(design_factories.BernoulliFactory(), UniformFactory(), [], self.sizes, 100, 1)

    def test_grid_must_increase(self):
        with self.assertRaises(ValueError):
            utils.check_A2(design_factories.BernoulliFactory(), UniformFactory(), [1.0], [400, 100], 100, 1)
