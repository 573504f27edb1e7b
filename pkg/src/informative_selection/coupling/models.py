from __future__ import unicode_literals

import csv

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.designs.models import IndicatorVector


class CouplingPartition(object):
    """
    Support of a design ordered by non-increasing h, each indicator owning the half-open
    interval (lower, upper] of [0, 1] whose length is its probability; x = 0 goes to the first one.
    The support is kept as a table of counts, one row per indicator.
    """

    def __init__(self, population, table, h_values, probabilities):
        self.population = population
        self.table = np.asarray(table)
        self.h_values = np.asarray(h_values, dtype=float)
        self.probabilities = np.asarray(probabilities, dtype=float)
        self.upper = np.cumsum(self.probabilities)
        if self.upper.size:
            self.upper[-1] = 1.0
        self.lower = np.concatenate(([0.0], self.upper[:-1]))
        self.clean()

    def __len__(self):
        return len(self.table)

    def __iter__(self):
        for row, h_value, lower, upper in zip(self.table, self.h_values, self.lower, self.upper):
            yield IndicatorVector(row), h_value, lower, upper

    def clean(self):
        if not len(self.table):
            raise ValidationError('Coupling needs a non-empty support')
        if not len(self.table) == self.h_values.size == self.probabilities.size:
            raise ValidationError('Every indicator needs an h value and a probability')
        if np.any(self.probabilities <= 0):
            raise ValidationError('Support probabilities must be positive')
        if np.any(np.diff(self.h_values) > 0):
            raise ValidationError('Support must be ordered by non-increasing h')

    def indicator(self, position):
        return IndicatorVector(self.table[position])

    def index(self, x):
        if not 0 <= x <= 1:
            raise ValueError('Coupling variable must lie in [0, 1], got %s' % x)
        if x == 0:
            return 0
        return int(min(np.searchsorted(self.upper, x, side='left'), len(self.table) - 1))

    def draw(self, x):
        return self.indicator(self.index(x))

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['indicator', 'h', 'interval_lo', 'interval_hi'])
        for indicator, h_value, lower, upper in self:
            writer.writerow([indicator.to_string(), repr(float(h_value)), repr(float(lower)), repr(float(upper))])
