import logging

from django.core.exceptions import ValidationError

from informative_selection.seeding import make_rng
from .models import Population


logger = logging.getLogger(__name__)


def density(model, y):
    return model.density(y)


def cdf(model, alpha):
    return model.cdf(alpha)


def moment(model, k):
    return model.moment(k)


def draw_responses(model, N, rng):
    """
    Inverse c.d.f. draws, so responses are a fixed function of the uniform stream
    and a longer draw extends a shorter one with the same generator state
    """
    return model.quantile(rng.random(N))


def draw_population(model, N, seed):
    if int(N) != N or N < 1:
        raise ValidationError('Population size must be a positive integer, got %s' % N)

    population = Population(draw_responses(model, int(N), make_rng(seed)), model=model)
    logger.debug('Drew population of %s responses from %s', N, model)
    return population
