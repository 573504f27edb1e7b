from __future__ import unicode_literals

import numpy as np
from django.core.exceptions import ValidationError

from informative_selection import conf
from informative_selection.exceptions import EmptySampleError
from .models import StepCdf


def empirical_cdf(population, indicator):
    """
    Unweighted c.d.f. of the selected responses, sum of 1{y_k <= alpha} I_k over 1{I = 0} + sum of I_k.
    Units selected several times count several times; tied responses merge into one jump.
    """
    if len(indicator) != population.N:
        raise ValidationError('Indicator length %s does not match N=%s' % (len(indicator), population.N))
    if indicator.is_empty:
        return StepCdf.empty_cdf()

    selected = indicator.counts > 0
    jumps, inverse = np.unique(population.responses[selected], return_inverse=True)
    weights = np.bincount(inverse, weights=indicator.counts[selected], minlength=jumps.size)
    values = np.cumsum(weights) / float(indicator.n)
    values[-1] = 1.0
    return StepCdf(jumps, values)


def sup_distance(step, target):
    """
    Exact sup over alpha of |step(alpha) - target(alpha)| for a continuous target.
    The supremum is reached at a jump, from the left or the right, or in a tail.
    A StepCdf target is compared on the union of both sets of jumps.
    """
    tails = np.asarray(target.cdf(np.array([-np.inf, np.inf])), dtype=float)
    distance = max(abs(tails[0]), abs(step.last_value - tails[1]))
    if step.empty and not isinstance(target, StepCdf):
        return float(distance)

    if isinstance(target, StepCdf):
        points = np.union1d(step.jump_points, target.jump_points)
        if not points.size:
            return float(distance)
        below = np.nextafter(points, -np.inf)
        gaps = np.concatenate((
            np.abs(step.cdf(points) - target.cdf(points)),
            np.abs(step.cdf(below) - target.cdf(below))))
        return float(max(distance, np.max(gaps)))

    target_values = np.asarray(target.cdf(step.jump_points), dtype=float)
    gaps = np.maximum(np.abs(step.values - target_values), np.abs(step.left_limits() - target_values))
    return float(max(distance, np.max(gaps)))


def quantile(step, p):
    return step.quantile(p)


def limit_quantile(limit, p):
    return limit.quantile(p)


def quantile_sup_distance(step, limit, interval, grid=None):
    """
    Largest gap between empirical and limit quantiles over a uniform grid of the interval.
    This is a lower bound of the supremum over the whole interval.
    """
    if grid is None:
        grid = conf.get_setting('QUANTILE_GRID')
    lower, upper = float(interval[0]), float(interval[1])
    if not 0 < lower <= upper < 1:
        raise ValueError('Quantile interval must lie inside (0, 1), got [%s, %s]' % (lower, upper))
    if int(grid) != grid or grid < 2:
        raise ValueError('Quantile grid needs at least 2 points, got %s' % grid)
    if step.empty:
        raise EmptySampleError('Quantile distance of an empty sample is undefined')

    levels = np.array([lower]) if lower == upper else np.linspace(lower, upper, int(grid))
    gaps = np.abs(step.quantile(levels) - np.asarray(limit.quantile(levels), dtype=float))
    return float(np.max(gaps))
