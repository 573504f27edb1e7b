import csv
import logging

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection.seeding import make_rng
from .models import IndicatorVector


logger = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-12


def sample(design, population, seed):
    """ One draw of the indicator vector given the population, deterministic in the seed """
    design.check(population)
    indicator = design.draw(population, make_rng(seed))
    if len(indicator) != population.N:
        raise ValidationError('%s produced %s indicators for N=%s' % (design, len(indicator), population.N))
    return indicator


def enumerate_support(design, population):
    """
    Exact conditional law of the indicator vector: every (IndicatorVector, probability)
    with positive probability, in the order produced by the design.
    """
    design.check(population)
    table, probabilities = design.support(population)
    total = float(np.sum(probabilities))
    if abs(total - 1.0) > PROBABILITY_TOLERANCE * max(1, len(probabilities)):
        logger.warning('Support of %s sums to %r for N=%s', design, total, population.N)

    logger.debug('Enumerated %s support points of %s for N=%s', len(probabilities), design, population.N)
    return [(IndicatorVector(row), float(probability)) for row, probability in zip(table, probabilities)]


def expected_sample_size(design, population):
    design.check(population)
    return design.expected_sample_size(population)


def support_to_csv(support, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['indicator', 'probability'])
    for indicator, probability in support:
        writer.writerow([indicator.to_string(), repr(probability)])
