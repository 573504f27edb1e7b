from __future__ import unicode_literals

import logging

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection import conf
from informative_selection.ecdf.utils import empirical_cdf, sup_distance
from informative_selection.exceptions import InfeasibleEnumeration, NoLimitError
from informative_selection.superpop.utils import draw_population
from informative_selection.weights.models import LimitCdf
from .models import CouplingPartition


logger = logging.getLogger(__name__)

CHUNK_ROWS = 2 ** 16


def _comparison_target(limit, normalized):
    if normalized or not hasattr(limit, 'unnormalized'):
        return limit
    return limit.unnormalized()


def h_gamma(population, indicator, limit, normalized=True):
    """
    Distance between the c.d.f. of the selected responses and the limit c.d.f.
    With ``normalized=False`` the comparison is against the unnormalized G_s.
    """
    return sup_distance(empirical_cdf(population, indicator), _comparison_target(limit, normalized))


def support_h_values(population, table, limit, normalized=True):
    """ h for every row of a support table at once, the same supremum as ``h_gamma`` """
    target = _comparison_target(limit, normalized)
    points, inverse = np.unique(population.responses, return_inverse=True)
    target_values = np.asarray(target.cdf(points), dtype=float)
    tails = np.asarray(target.cdf(np.array([-np.inf, np.inf])), dtype=float)
    membership = np.zeros((population.N, points.size))
    membership[np.arange(population.N), inverse] = 1.0

    h_values = np.empty(len(table))
    for start in range(0, len(table), CHUNK_ROWS):
        rows = np.asarray(table[start:start + CHUNK_ROWS], dtype=float)
        sizes = rows.sum(axis=1)
        cumulative = np.cumsum(rows.dot(membership), axis=1) / np.maximum(sizes, 1.0)[:, None]
        left = np.concatenate((np.zeros((len(rows), 1)), cumulative[:, :-1]), axis=1)
        inner = np.maximum(np.abs(cumulative - target_values), np.abs(left - target_values)).max(axis=1)
        last = np.where(sizes > 0, 1.0, 0.0)
        outer = np.maximum(abs(tails[0]), np.abs(last - tails[1]))
        h_values[start:start + len(rows)] = np.where(sizes > 0, np.maximum(inner, outer), outer)
    return h_values


def build_coupling(design, population, limit, normalized=True):
    """
    Order the support by decreasing h, ties broken by the lexicographic order of the counts,
    and lay the probabilities out along [0, 1]
    """
    if population.N > conf.get_setting('COUPLING_MAX_N'):
        raise InfeasibleEnumeration('Coupling is limited to N <= %s, got N=%s'
                                    % (conf.get_setting('COUPLING_MAX_N'), population.N))
    design.check(population)
    table, probabilities = design.support(population)
    h_values = support_h_values(population, table, limit, normalized=normalized)

    keys = tuple(table[:, column] for column in reversed(range(population.N))) + (-h_values,)
    order = np.lexsort(keys)
    logger.debug('Built coupling of %s support points for %s at N=%s', len(order), design, population.N)
    return CouplingPartition(population, table[order], h_values[order], probabilities[order])


def coupled_draw(partition, x):
    return partition.draw(x)


def coupling_target(design, model, target='limit'):
    """ F_s of the design, or the superpopulation c.d.f. when asked for or when there is no limit """
    if target == 'superpop':
        return model
    try:
        return LimitCdf(design.limit_weight(model))
    except NoLimitError as error:
        logger.warning('%s, comparing against the superpopulation c.d.f.', error)
        return model


def coupled_sup_trajectory(design, model, n_grid, x, seed, target='limit', normalized=True):
    """ h of the coupled indicator at a fixed x along a nested population sequence """
    sizes = [int(size) for size in n_grid]
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValidationError('N-grid must be strictly increasing')
    if sizes[-1] > conf.get_setting('COUPLING_MAX_N'):
        raise InfeasibleEnumeration('Coupling is limited to N <= %s, got N=%s'
                                    % (conf.get_setting('COUPLING_MAX_N'), sizes[-1]))

    comparison = coupling_target(design, model, target)
    nested = draw_population(model, sizes[-1], seed)
    trajectory = []
    for N in sizes:
        partition = build_coupling(design, nested.prefix(N), comparison, normalized=normalized)
        trajectory.append((N, float(partition.h_values[partition.index(x)])))
        logger.info('Coupled h at N=%s and x=%s is %s', N, x, trajectory[-1][1])
    return trajectory
