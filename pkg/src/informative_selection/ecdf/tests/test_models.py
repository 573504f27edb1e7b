import io
import unittest

import numpy as np
from django.core.exceptions import ValidationError
from hypothesis import given, strategies as st

from informative_selection.exceptions import EmptySampleError
from . import factories
from .. import models


class StepCdfTest(unittest.TestCase):

    def test_right_continuous_evaluation(self):
        step = factories.StepCdfFactory()
        self.assertEqual(step(0.5), 0.0)
        self.assertEqual(step(1.0), 0.5)
        self.assertEqual(step(2.9), 0.5)
        self.assertEqual(step(3.0), 1.0)
        np.testing.assert_array_equal(step.cdf(np.array([0.0, 1.0, 5.0])), [0.0, 0.5, 1.0])

    def test_empty_step_is_zero(self):
        step = models.StepCdf.empty_cdf()
        self.assertEqual(step(10.0), 0.0)
        self.assertEqual(step.last_value, 0.0)

    def test_quantiles(self):
        step = factories.StepCdfFactory()
        self.assertEqual(step.quantile(0.5), 1.0)
        self.assertEqual(step.quantile(0.6), 3.0)
        self.assertEqual(step.quantile(0.999), 3.0)

    def test_quantile_of_empty_step(self):
        with self.assertRaises(EmptySampleError):
            models.StepCdf.empty_cdf().quantile(0.5)

    def test_values_must_end_at_one(self):
        with self.assertRaises(ValidationError):
            factories.StepCdfFactory(values=(0.5, 0.9))

    def test_jumps_must_increase(self):
        with self.assertRaises(ValidationError):
            factories.StepCdfFactory(jump_points=(3.0, 1.0))

    def test_to_csv(self):
        stream = io.StringIO()
        factories.StepCdfFactory().to_csv(stream)
        self.assertEqual(stream.getvalue(), 'jump,value\n1.0,0.5\n3.0,1.0\n')

    @given(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=8),
           st.floats(min_value=0.001, max_value=0.999),
           st.floats(min_value=-1.0, max_value=10.0))
    def test_quantile_is_galois_inverse_of_cdf(self, weights, p, y):
        values = np.cumsum(weights) / float(sum(weights))
        values[-1] = 1.0
        step = models.StepCdf(np.arange(len(weights), dtype=float), values)
        self.assertEqual(step.quantile(p) <= y, step(y) >= p)
