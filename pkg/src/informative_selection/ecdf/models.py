from __future__ import unicode_literals

import csv

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.exceptions import EmptySampleError


class StepCdf(object):
    """
    Right-continuous step function: values[k] holds on [jump_points[k], jump_points[k + 1]).
    An empty step function is identically zero.
    """

    def __init__(self, jump_points, values, empty=False):
        self.jump_points = np.asarray(jump_points, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.empty = bool(empty)
        self.clean()

    def __repr__(self):
        if self.empty:
            return 'StepCdf(empty)'
        return 'StepCdf(%d jumps on [%g, %g])' % (self.jump_points.size, self.jump_points[0], self.jump_points[-1])

    def __len__(self):
        return self.jump_points.size

    @classmethod
    def empty_cdf(cls):
        return cls([], [], empty=True)

    def clean(self):
        if self.jump_points.shape != self.values.shape or self.jump_points.ndim != 1:
            raise ValidationError('Jump points and values must be vectors of equal length')
        if self.empty:
            if self.jump_points.size:
                raise ValidationError('Empty step function cannot have jumps')
            return
        if not self.jump_points.size:
            raise ValidationError('Non-empty step function needs at least one jump')
        if np.any(np.diff(self.jump_points) <= 0):
            raise ValidationError('Jump points must be strictly increasing')
        if np.any(np.diff(self.values) < 0) or self.values[0] < 0 or self.values[-1] != 1.0:
            raise ValidationError('Step values must be non-decreasing and end at 1')

    def cdf(self, alpha):
        scalar = np.ndim(alpha) == 0
        alpha = np.asarray(alpha, dtype=float)
        if self.empty:
            values = np.zeros(alpha.shape)
        else:
            index = np.searchsorted(self.jump_points, alpha, side='right') - 1
            values = np.where(index >= 0, self.values[np.maximum(index, 0)], 0.0)
        return float(values) if scalar else values

    __call__ = cdf

    def left_limits(self):
        """ Values just before every jump """
        return np.concatenate(([0.0], self.values[:-1]))

    @property
    def last_value(self):
        return 0.0 if self.empty else float(self.values[-1])

    def quantile(self, p):
        """ inf{y: F(y) >= p}, the smallest jump point whose value reaches p """
        if self.empty:
            raise EmptySampleError('Quantile of an empty sample is undefined')
        scalar = np.ndim(p) == 0
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)):
            raise ValueError('Quantile levels must lie in (0, 1)')
        index = np.minimum(np.searchsorted(self.values, p, side='left'), self.values.size - 1)
        values = self.jump_points[index]
        return float(values) if scalar else values

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['jump', 'value'])
        for jump, value in zip(self.jump_points, self.values):
            writer.writerow([repr(float(jump)), repr(float(value))])
