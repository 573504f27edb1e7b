import io

import numpy as np
from django.test import SimpleTestCase

from informative_selection import conf
from informative_selection.designs.tests import factories as design_factories
from informative_selection.exceptions import NoLimitError
from informative_selection.superpop.tests.factories import UniformFactory
from . import factories
from .. import models, utils
from ..serializers import ConditionReportSerializer


def csv_text(report):
    stream = io.StringIO()
    report.to_csv(stream)
    return stream.getvalue()


class RunConvergenceTest(SimpleTestCase):

    def test_rows_follow_grid_and_replicates(self):
        report = utils.run_convergence(factories.ExperimentConfigFactory())
        self.assertEqual([(row.N, row.replicate) for row in report.rows],
                         [(N, replicate) for N in (50, 100) for replicate in range(5)])
        self.assertEqual([aggregate.N for aggregate in report.aggregates], [50, 100])

    def test_aggregates_recompute_from_rows(self):
        report = utils.run_convergence(factories.ExperimentConfigFactory())
        for aggregate in report.aggregates:
            rows = [row for row in report.rows if row.N == aggregate.N]
            self.assertEqual(aggregate.mean_sup, float(np.mean([row.sup_dist for row in rows])))
            self.assertEqual(aggregate.mean_n, float(np.mean([row.realized_n for row in rows])))
            self.assertEqual(aggregate.replicates, 5)

    def test_same_seed_gives_same_csv(self):
        first = csv_text(utils.run_convergence(factories.ExperimentConfigFactory()))
        second = csv_text(utils.run_convergence(factories.ExperimentConfigFactory()))
        self.assertEqual(first, second)

    def test_worker_count_does_not_change_results(self):
        single = csv_text(utils.run_convergence(factories.ExperimentConfigFactory()))
        with conf.override({'WORKERS': 4}):
            self.assertEqual(conf.get_setting('WORKERS'), 4)
            threaded = csv_text(utils.run_convergence(factories.ExperimentConfigFactory()))
        self.assertEqual(single, threaded)

    def test_other_seed_gives_other_rows(self):
        first = csv_text(utils.run_convergence(factories.ExperimentConfigFactory(seed=1)))
        second = csv_text(utils.run_convergence(factories.ExperimentConfigFactory(seed=2)))
        self.assertNotEqual(first, second)

    def test_csv_layout(self):
        lines = csv_text(utils.run_convergence(factories.ExperimentConfigFactory())).splitlines()
        self.assertEqual(lines[0], 'design,N,replicate,realized_n,empty,sup_dist,sup_dist_sq,quantile_sup_dist')
        self.assertTrue(lines[1].startswith('length_biased,50,0,'))
        self.assertEqual(len(lines), 11)

    def test_empty_samples_are_flagged(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.BernoulliFactory(p=0.01), n_grid=(5,), replicates=20)
        report = utils.run_convergence(config)
        empty = [row for row in report.rows if row.empty]
        self.assertTrue(empty)
        for row in empty:
            self.assertEqual(row.sup_dist, 1.0)
            self.assertIsNone(row.quantile_sup_dist)
        self.assertEqual(report.aggregates[0].empty_fraction, len(empty) / 20.0)

    def test_clamped_probabilities_are_counted_per_size(self):
        config = factories.ExperimentConfigFactory(design=design_factories.PoissonProportionalZFactory(fraction=1.0))
        report = utils.run_convergence(config)
        for aggregate in report.aggregates:
            rows = [row for row in report.rows if row.N == aggregate.N]
            self.assertEqual(aggregate.clamped, sum(row.clamped for row in rows))
            self.assertGreater(aggregate.clamped, 0)
        self.assertNotIn('clamped', csv_text(report).splitlines()[0])

    def test_designs_without_clamping_report_none(self):
        report = utils.run_convergence(factories.ExperimentConfigFactory())
        self.assertEqual([aggregate.clamped for aggregate in report.aggregates], [0, 0])

    def test_cluster_design_needs_superpopulation_target(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.ClusterSplitFactory(), model=UniformFactory(a=0.0, b=1.0))
        with self.assertRaises(NoLimitError):
            utils.run_convergence(config)

    def test_cluster_design_stays_away_from_superpopulation(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.ClusterSplitFactory(), model=UniformFactory(a=0.0, b=1.0),
            n_grid=(200, 1000), replicates=10, target=models.ExperimentConfig.Targets.SUPERPOP)
        report = utils.run_convergence(config)
        for row in report.rows:
            self.assertGreaterEqual(row.sup_dist, 0.3 - 0.02)
        for aggregate in report.aggregates:
            self.assertGreaterEqual(aggregate.mean_sup, 0.3)


class RunAuditTest(SimpleTestCase):

    def test_default_condition_groups(self):
        self.assertEqual(utils.default_condition_groups(design_factories.PpsWithReplacementFactory()),
                         ['A0', 'A1', 'A2'])
        self.assertEqual(utils.default_condition_groups(design_factories.BernoulliFactory()), ['A4'])
        self.assertEqual(utils.default_condition_groups(design_factories.LengthBiasedPoissonFactory()),
                         ['A3', 'A1'])

    def test_requested_conditions(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.BernoulliFactory(), n_grid=(100, 400, 1600), replicates=200,
            mode=models.ExperimentConfig.Modes.AUDIT, conditions=['A4', 'A2'])
        report = utils.run_audit(config)
        self.assertEqual([entry.condition for entry in report], ['A4', 'A2.1', 'A2.2', 'A2.3'])
        self.assertTrue(report['A4'].passed)

    def test_pathological_poisson_fails(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.PoissonPathologicalFactory(), n_grid=(100, 400, 1600), replicates=200,
            mode=models.ExperimentConfig.Modes.AUDIT)
        report = utils.run_audit(config)
        self.assertEqual(report['A4'].verdict, 'fail')
        self.assertEqual(report.verdict, 'fail')

    def test_rerun_renders_identical_report(self):
        def render():
            config = factories.ExperimentConfigFactory(
                design=design_factories.LengthBiasedPoissonFactory(), n_grid=(30, 60, 120), replicates=100,
                mode=models.ExperimentConfig.Modes.AUDIT)
            return utils.render_json(ConditionReportSerializer(utils.run_audit(config)).data)

        first = render()
        self.assertEqual(render(), first)
        self.assertIn(b'"A3.2"', first)
        self.assertIn(b'"mprime_12"', first)


class RunCoupleTest(SimpleTestCase):

    def test_partition_and_trajectory(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.BernoulliFactory(p=0.5), n_grid=(4, 6),
            mode=models.ExperimentConfig.Modes.COUPLE)
        partition, trajectory = utils.run_couple(config)
        self.assertEqual(len(partition), 2 ** 6)
        self.assertEqual([N for N, _ in trajectory], [4, 6])


class RunEnumerateTest(SimpleTestCase):

    def test_support_csv(self):
        config = factories.ExperimentConfigFactory(
            design=design_factories.SimpleRandomSamplingFactory(n=1), n_grid=(2,),
            mode=models.ExperimentConfig.Modes.ENUMERATE)
        lines = utils.support_csv(utils.run_enumerate(config)).splitlines()
        self.assertEqual(lines, ['indicator,probability', '10,0.5', '01,0.5'])


class OutputHelpersTest(SimpleTestCase):

    def test_render_json(self):
        self.assertEqual(utils.render_json({'a': 1}), b'{\n  "a": 1\n}\n')

    def test_summary_path(self):
        self.assertEqual(utils.summary_path('/tmp/run.csv'), '/tmp/run.json')
