from django.test import SimpleTestCase

from informative_selection.designs.tests import factories as design_factories
from informative_selection.superpop.tests.factories import UniformFactory
from . import factories
from .. import utils
from ..models import ExperimentConfig


class ConvergenceExperimentTest(SimpleTestCase):
    """ Desk scale runs of the convergence harness against known limits """

    def assertDecreasing(self, values):
        for previous, current in zip(values, values[1:]):
            self.assertLess(current, previous)

    def test_census_matches_superpopulation(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.BernoulliFactory(p=1.0), model=UniformFactory(a=0.0, b=1.0),
            n_grid=(100000,), replicates=50)
        report = utils.run_convergence(config)
        self.assertLess(report.aggregates[0].mean_sup, 0.01)
        self.assertEqual(report.aggregates[0].mean_n, 100000)

    def test_length_biased_sampling_converges(self):
        config = factories.ExperimentConfigFactory(
            n_grid=(200, 1000, 5000), replicates=200, quantile_grid=None)
        report = utils.run_convergence(config)
        self.assertDecreasing([aggregate.mean_sup_sq for aggregate in report.aggregates])
        self.assertLess(report.aggregates[-1].mean_sup_sq, 0.005)
        self.assertLess(report.slope, -0.7)

        self.assertDecreasing([aggregate.mean_quantile_sup for aggregate in report.aggregates])
        self.assertLess(report.aggregates[-1].mean_quantile_sup, 0.02)

    def test_pps_with_replacement_shares_length_biased_limit(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.PpsWithReplacementFactory(), n_grid=(5000,), replicates=100)
        report = utils.run_convergence(config)
        self.assertLess(report.aggregates[0].mean_sup, 0.05)

    def test_cluster_split_does_not_converge(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.ClusterSplitFactory(), model=UniformFactory(a=0.0, b=1.0),
            n_grid=(200, 1000, 5000), replicates=20, target=ExperimentConfig.Targets.SUPERPOP)
        report = utils.run_convergence(config)
        for aggregate in report.aggregates:
            self.assertGreaterEqual(aggregate.mean_sup, 0.3)

    def test_endogenous_strata_converge(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.EndogenousStrataFactory(), model=UniformFactory(a=0.0, b=1.0),
            n_grid=(500, 2000, 8000), replicates=100)
        report = utils.run_convergence(config)
        self.assertDecreasing([aggregate.mean_sup_sq for aggregate in report.aggregates])
