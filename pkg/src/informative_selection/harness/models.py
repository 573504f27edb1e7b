from __future__ import unicode_literals

import collections
import csv

import numpy as np

from informative_selection.conditions.utils import empty_sample_bound
from informative_selection.stats import loglog_fit, mean_and_se


class ExperimentConfig(object):
    """ Validated experiment, built by ``serializers.ExperimentSerializer`` """

    class Modes(object):
        CONVERGE = 'converge'
        AUDIT = 'audit'
        COUPLE = 'couple'
        ENUMERATE = 'enumerate'

        CHOICES = ((CONVERGE, 'Convergence'), (AUDIT, 'Condition audit'),
                   (COUPLE, 'Coupling'), (ENUMERATE, 'Support enumeration'))

    class Targets(object):
        LIMIT = 'limit'
        SUPERPOP = 'superpop'

        CHOICES = ((LIMIT, 'Limit c.d.f. of the design'), (SUPERPOP, 'Superpopulation c.d.f.'))

    def __init__(self, model, design, n_grid, mode=Modes.CONVERGE, replicates=100, seed=0,
                 quantile_interval=(0.1, 0.9), quantile_grid=None, output=None, target=Targets.LIMIT,
                 settings=None, conditions=None, y_pairs=None, alpha_grid=None, pair_draws=10,
                 population_size=None, x=0.5, normalized=True):
        self.model = model
        self.design = design
        self.n_grid = [int(N) for N in n_grid]
        self.mode = mode
        self.replicates = int(replicates)
        self.seed = int(seed)
        self.quantile_interval = tuple(quantile_interval)
        self.quantile_grid = quantile_grid
        self.output = output
        self.target = target
        self.settings = settings or {}
        self.conditions = conditions
        self.y_pairs = y_pairs
        self.alpha_grid = alpha_grid
        self.pair_draws = int(pair_draws)
        self.population_size = population_size or self.n_grid[-1]
        self.x = float(x)
        self.normalized = bool(normalized)

    def __str__(self):
        return '%s of %s under %s' % (self.mode, self.design, self.model)


ConvergenceRow = collections.namedtuple('ConvergenceRow', (
    'design', 'N', 'replicate', 'realized_n', 'empty', 'sup_dist', 'sup_dist_sq', 'quantile_sup_dist',
    'clamped'))


class ConvergenceAggregate(object):

    def __init__(self, N, rows):
        sup = np.array([row.sup_dist for row in rows])
        sup_sq = np.array([row.sup_dist_sq for row in rows])
        sizes = np.array([row.realized_n for row in rows], dtype=float)
        quantiles = [row.quantile_sup_dist for row in rows if row.quantile_sup_dist is not None]

        self.N = N
        self.replicates = len(rows)
        self.mean_sup, self.se_sup = mean_and_se(sup)
        self.mean_sup_sq, self.se_sup_sq = mean_and_se(sup_sq)
        if quantiles:
            self.mean_quantile_sup, self.se_quantile_sup = mean_and_se(quantiles)
        else:
            self.mean_quantile_sup = self.se_quantile_sup = None
        self.empty_fraction = float(np.mean([row.empty for row in rows]))
        # units whose inclusion probability was cut back to one, over all replicates
        self.clamped = int(sum(row.clamped for row in rows))
        self.mean_n = float(np.mean(sizes))
        self.var_n = float(np.var(sizes))
        self.empty_bound = empty_sample_bound(self.mean_n, self.var_n) if self.mean_n > 1 else None


class ConvergenceReport(object):
    """ Per-replicate distances in (N index, replicate) order with per-N aggregates """
    # clamping is summed into the aggregates, not written per replicate
    COLUMNS = ConvergenceRow._fields[:-1]

    def __init__(self, config, rows):
        self.config = config
        self.rows = list(rows)
        self.aggregates = []
        for N in config.n_grid:
            self.aggregates.append(ConvergenceAggregate(N, [row for row in self.rows if row.N == N]))
        self.fit = loglog_fit(config.n_grid, [aggregate.mean_sup_sq for aggregate in self.aggregates])

    @property
    def slope(self):
        return self.fit.slope if self.fit else None

    @property
    def r_squared(self):
        return self.fit.r_squared if self.fit else None

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(self.COLUMNS)
        for row in self.rows:
            writer.writerow([
                row.design, row.N, row.replicate, row.realized_n, int(row.empty),
                repr(row.sup_dist), repr(row.sup_dist_sq),
                '' if row.quantile_sup_dist is None else repr(row.quantile_sup_dist)])
