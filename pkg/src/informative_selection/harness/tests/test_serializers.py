from django.test import SimpleTestCase

from informative_selection.conditions.tests.factories import ConditionEntryFactory, ConditionReportFactory
from informative_selection.designs import models as designs
from informative_selection.superpop import models as superpop
from informative_selection.weights.utils import InclusionEstimates
from . import factories
from .. import models, serializers


class ExperimentSerializerTest(SimpleTestCase):

    def validate(self, **kwargs):
        serializer = serializers.ExperimentSerializer(data=factories.config_data(**kwargs))
        return serializer, serializer.is_valid()

    def test_valid_config_builds_experiment(self):
        serializer, valid = self.validate()
        self.assertTrue(valid, serializer.errors)
        config = serializer.save()
        self.assertIsInstance(config, models.ExperimentConfig)
        self.assertIsInstance(config.model, superpop.Uniform)
        self.assertIsInstance(config.design, designs.LengthBiasedPoisson)
        self.assertEqual(config.design.tau, 0.5)
        self.assertEqual(config.mode, models.ExperimentConfig.Modes.CONVERGE)
        self.assertEqual(config.target, models.ExperimentConfig.Targets.LIMIT)
        self.assertEqual(config.quantile_interval, (0.1, 0.9))
        self.assertEqual(config.population_size, 100)

    def test_every_variant_can_be_configured(self):
        variants = [
            {'variant': 'srswor', 'fraction': 0.3},
            {'variant': 'bernoulli', 'p': 0.3},
            {'variant': 'poisson_fixed_pi', 'pi': [0.2, 0.4], 'permuted': False},
            {'variant': 'poisson_proportional_z', 'fraction': 0.2,
             'z_model': {'kind': 'truncated_exponential', 'rate': 2.0, 'a': 1.0, 'b': 3.0}},
            {'variant': 'poisson_pathological', 'a': 0.5, 'b': 0.1},
            {'variant': 'length_biased', 'tau': 0.5, 'tau_offset': 2.0},
            {'variant': 'cluster_split', 'tau': 0.8},
            {'variant': 'cutoff', 'tau': 0.8, 'fraction': 0.5, 'mode': 'take_all'},
            {'variant': 'pps_with_replacement', 'fraction': 0.3},
            {'variant': 'endogenous_strata', 'stratum_fractions': [0.5, 0.5], 'sampling_fractions': [0.2, 0.4]},
        ]
        for design in variants:
            serializer, valid = self.validate(design=design)
            self.assertTrue(valid, serializer.errors)
            self.assertEqual(serializer.save().design.variant, design['variant'])

    def test_piecewise_model(self):
        serializer, valid = self.validate(model={'kind': 'piecewise_linear', 'knots': [[0.5, 1], [1.5, 1]]})
        self.assertTrue(valid, serializer.errors)
        self.assertIsInstance(serializer.save().model, superpop.PiecewiseLinearDensity)

    def test_piecewise_model_needs_knots(self):
        serializer, valid = self.validate(model={'kind': 'piecewise_linear'})
        self.assertFalse(valid)
        self.assertIn('model', serializer.errors)

    def test_unknown_variant(self):
        serializer, valid = self.validate(design={'variant': 'snowball'})
        self.assertFalse(valid)
        self.assertIn('design', serializer.errors)

    def test_variant_parameters_are_required(self):
        serializer, valid = self.validate(design={'variant': 'length_biased'})
        self.assertFalse(valid)
        self.assertIn('tau', serializer.errors['design'])

    def test_invalid_design_parameters(self):
        serializer, valid = self.validate(design={'variant': 'srswor', 'n': 2, 'fraction': 0.5})
        self.assertFalse(valid)
        self.assertIn('design', serializer.errors)

    def test_invalid_model_parameters(self):
        serializer, valid = self.validate(model={'kind': 'uniform', 'a': 2.0, 'b': 1.0})
        self.assertFalse(valid)
        self.assertIn('model', serializer.errors)

    def test_grid_must_increase(self):
        serializer, valid = self.validate(n_grid=[100, 50])
        self.assertFalse(valid)
        self.assertIn('n_grid', serializer.errors)

    def test_quantile_interval_inside_unit_interval(self):
        serializer, valid = self.validate(quantile_interval=[0.0, 0.9])
        self.assertFalse(valid)
        self.assertIn('quantile_interval', serializer.errors)

    def test_unknown_settings(self):
        serializer, valid = self.validate(settings={'WORKERS': 2, 'COLOR': 'red'})
        self.assertFalse(valid)
        self.assertIn('settings', serializer.errors)

    def test_known_settings(self):
        serializer, valid = self.validate(settings={'WORKERS': 2})
        self.assertTrue(valid, serializer.errors)
        self.assertEqual(serializer.save().settings, {'WORKERS': 2})

    def test_unknown_condition_group(self):
        serializer, valid = self.validate(conditions=['A5'])
        self.assertFalse(valid)


class ReportSerializersTest(SimpleTestCase):

    def test_condition_report(self):
        report = ConditionReportFactory(entries=[ConditionEntryFactory()])
        data = serializers.ConditionReportSerializer(report).data
        self.assertEqual(data['verdict'], 'pass')
        self.assertEqual(data['design'], {'variant': 'bernoulli', 'p': 0.3})
        self.assertEqual(data['entries'][0]['condition'], 'A4')
        self.assertIsNone(data['entries'][0]['slope'])
        self.assertEqual(data['entries'][0]['inclusion'], [])

    def test_condition_entry_carries_pair_estimates(self):
        pair = InclusionEstimates(200, m_hat=0.3, se_m=0.03, mprime_12=0.3, mprime_21=0.28, c_hat=-0.01, se_c=0.02)
        entry = ConditionEntryFactory(condition='A3.3', inclusion=[pair])
        data = serializers.ConditionEntrySerializer(entry).data
        self.assertEqual(len(data['inclusion']), 1)
        self.assertEqual(data['inclusion'][0]['mprime_21'], 0.28)
        self.assertEqual(data['inclusion'][0]['reps'], 200)
        self.assertIsNone(data['inclusion'][0]['d_hat'])

    def test_inclusion_estimates(self):
        estimates = InclusionEstimates(100, m_hat=0.3, se_m=0.01)
        data = serializers.InclusionEstimatesSerializer(estimates).data
        self.assertEqual(data['m_hat'], 0.3)
        self.assertIsNone(data['c_hat'])
        self.assertEqual(data['reps'], 100)
