from __future__ import unicode_literals

import collections
import logging

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.seeding import make_rng
from informative_selection.stats import mean_and_se, variance_and_se
from informative_selection.superpop.models import Population
from informative_selection.superpop.utils import draw_responses
from .models import LimitCdf


logger = logging.getLogger(__name__)

MIN_REPLICATES = 100

TheoreticalInclusion = collections.namedtuple('TheoreticalInclusion', ('value', 'is_limit'))


class InclusionEstimates(object):
    """
    Monte Carlo estimates of the inclusion functionals of unit 1 (and unit 2 for pairs):
    m = E[I_1 | Y_1 = y], v = Var(I_1 | Y_1 = y), m'_12 = E[I_1 | Y_1 = y1, Y_2 = y2],
    d = E[I_1 I_2 | ...] and c = d - m'_12 m'_21.
    """
    FIELDS = ('m_hat', 'v_hat', 'mprime_12', 'mprime_21', 'c_hat', 'd_hat')

    def __init__(self, reps, **values):
        self.reps = reps
        for name in self.FIELDS:
            setattr(self, name, values.get(name))
            setattr(self, 'se_' + name.replace('_hat', ''), values.get('se_' + name.replace('_hat', '')))

    def __repr__(self):
        return 'InclusionEstimates(%s)' % ', '.join(
            '%s=%r' % (name, getattr(self, name)) for name in self.FIELDS if getattr(self, name) is not None)


def _check_replicates(reps):
    if int(reps) != reps or reps < MIN_REPLICATES:
        raise ValidationError('At least %s replicates are required, got %s' % (MIN_REPLICATES, reps))


def _conditioned_draws(design, model, fixed, N, reps, seed):
    """
    Indicator counts of the first len(fixed) units over ``reps`` runs of the design on populations
    whose first responses are ``fixed`` and whose other responses are redrawn from the model
    """
    _check_replicates(reps)
    if N < len(fixed):
        raise ValidationError('Population size %s cannot hold %s fixed responses' % (N, len(fixed)))

    counts = np.empty((int(reps), len(fixed)), dtype=np.int64)
    for rep in range(int(reps)):
        responses = draw_responses(model, N, make_rng(seed, rep, 1))
        population = Population(responses, model=model).with_fixed(fixed)
        if rep == 0:
            design.check(population)
        indicator = design.draw(population, make_rng(seed, rep, 2))
        counts[rep] = indicator.counts[:len(fixed)]
    return counts


def m_theoretical(design, model, y, N, limit=False):
    """
    Exact m_gamma(y) at size N when the design has a finite-N closed form, else the limit m(y).
    Returns None when neither is available.
    """
    if not limit:
        value = design.inclusion(y, model, N)
        if value is not None:
            return TheoreticalInclusion(value, False)

    value = design.limit_inclusion(y, model)
    if value is None:
        return None
    return TheoreticalInclusion(value, True)


def m_monte_carlo(design, model, y, N, reps, seed):
    counts = _conditioned_draws(design, model, [y], N, reps, seed)[:, 0]
    m_hat, se_m = mean_and_se(counts)
    v_hat, se_v = variance_and_se(counts)
    logger.debug('Estimated m(%s) = %s (SE %s) for %s at N=%s', y, m_hat, se_m, design, N)
    return InclusionEstimates(reps, m_hat=m_hat, se_m=se_m, v_hat=v_hat, se_v=se_v)


def pairwise_monte_carlo(design, model, y1, y2, N, reps, seed):
    """
    Pairwise functionals of units 1 and 2 with Y_1 = y1 and Y_2 = y2.
    Under cut-off sampling these are the expectations over the number S of units below tau,
    under PPS over the total W of the other sizes; both are sampled rather than summed.
    """
    if N < 2:
        raise ValidationError('Pairwise estimates need N >= 2, got %s' % N)

    counts = _conditioned_draws(design, model, [y1, y2], N, reps, seed).astype(float)
    first, second = counts[:, 0], counts[:, 1]
    mprime_12, se_mprime_12 = mean_and_se(first)
    mprime_21, se_mprime_21 = mean_and_se(second)
    d_hat, se_d = mean_and_se(first * second)
    c_hat = d_hat - mprime_12 * mprime_21
    # delta method on the plug-in covariance
    _, se_c = mean_and_se(first * second - mprime_21 * first - mprime_12 * second)
    m_hat, se_m = mprime_12, se_mprime_12
    v_hat, se_v = variance_and_se(first)
    return InclusionEstimates(
        reps, m_hat=m_hat, se_m=se_m, v_hat=v_hat, se_v=se_v,
        mprime_12=mprime_12, se_mprime_12=se_mprime_12, mprime_21=mprime_21, se_mprime_21=se_mprime_21,
        c_hat=c_hat, se_c=se_c, d_hat=d_hat, se_d=se_d)


def limit_cdf_eval(limit, alpha):
    return limit.cdf(alpha)


def builtin_weight(design, model):
    return design.limit_weight(model)


def limit_cdf(design, model):
    return LimitCdf(builtin_weight(design, model))


def sample_pdf(weight, y):
    """ Density of a selected response, m(y) f(y) / integral of m f """
    if not weight.normalizer > 0:
        raise ValidationError('Weight %s has a zero normalizer' % weight.describe())
    values = np.asarray(weight(y), dtype=float) * np.asarray(weight.model.density(y), dtype=float)
    values = values / weight.normalizer
    return values if np.ndim(y) else float(values)
