from __future__ import unicode_literals

import logging

import numpy as np
from django.core.exceptions import ValidationError
from scipy import integrate

from informative_selection import conf
from informative_selection.exceptions import FlatRegionError


logger = logging.getLogger(__name__)

BISECTION_TOLERANCE = 1e-10
BOUNDARY_TOLERANCE = 1e-8


class WeightSpec(object):
    """
    Weight function m of the limit c.d.f., tied to the superpopulation model it is integrated against.
    ``bound`` is the dominating function M, either a constant or a callable; defaults to m itself.
    """
    class Kinds(object):
        CONSTANT = 'constant'
        LINEAR = 'linear'
        STEP = 'step'
        FUNCTION = 'function'

    kind = None

    def __init__(self, model, bound=None):
        self.model = model
        self._bound = bound
        self._normalizer = None

    def __call__(self, y):
        raise NotImplementedError

    def partial(self, alpha):
        """ Unnormalized weighted c.d.f., integral of m f over (-inf, alpha] """
        raise NotImplementedError

    def describe(self):
        return self.kind

    def bound(self, y):
        if self._bound is None:
            return self(y)
        if callable(self._bound):
            return self._bound(y)
        return np.full(np.shape(y), float(self._bound)) if np.ndim(y) else float(self._bound)

    @property
    def normalizer(self):
        if self._normalizer is None:
            self._normalizer = float(self.partial(self.model.b))
        return self._normalizer

    def clean(self):
        if not self.normalizer > 0:
            raise ValidationError(
                'Weight %s integrates to %r against %s, A0.2 requires a positive integral'
                % (self.describe(), self.normalizer, self.model))

        grid = self.model.support_grid()
        if np.any(self(grid) > np.asarray(self.bound(grid)) + 1e-12):
            raise ValidationError('Weight %s exceeds its dominating function' % self.describe())
        if np.any(self(grid) < 0):
            raise ValidationError('Weight %s takes negative values' % self.describe())

    def to_dict(self):
        return {'kind': self.kind, 'description': self.describe(), 'normalizer': self.normalizer}


class ConstantWeight(WeightSpec):
    kind = WeightSpec.Kinds.CONSTANT

    def __init__(self, model, value, bound=None):
        super(ConstantWeight, self).__init__(model, bound=bound)
        self.value = float(value)

    def describe(self):
        return 'm(y) = %g' % self.value

    def __call__(self, y):
        if np.ndim(y):
            return np.full(np.shape(y), self.value)
        return self.value

    def partial(self, alpha):
        return self.value * self.model.cdf(alpha)


class LinearWeight(WeightSpec):
    kind = WeightSpec.Kinds.LINEAR

    def __init__(self, model, slope, bound=None):
        super(LinearWeight, self).__init__(model, bound=bound)
        self.slope = float(slope)

    def describe(self):
        return 'm(y) = %g y' % self.slope

    def __call__(self, y):
        values = self.slope * np.asarray(y, dtype=float)
        return values if np.ndim(y) else float(values)

    def partial(self, alpha):
        return self.slope * self.model.partial_moment(1, alpha)


class StepWeight(WeightSpec):
    """
    Piecewise constant weight: levels[0] on (-inf, breaks[0]], levels[h] on (breaks[h-1], breaks[h]],
    levels[-1] on (breaks[-1], inf)
    """
    kind = WeightSpec.Kinds.STEP

    def __init__(self, model, breaks, levels, bound=None):
        super(StepWeight, self).__init__(model, bound=bound)
        self.breaks = np.asarray(breaks, dtype=float)
        self.levels = np.asarray(levels, dtype=float)
        if self.levels.size != self.breaks.size + 1:
            raise ValidationError('Step weight needs exactly one more level than breaks')
        if np.any(np.diff(self.breaks) < 0):
            raise ValidationError('Step weight breaks must be non-decreasing')

    def describe(self):
        return 'step m with levels %s at %s' % (
            ', '.join('%g' % level for level in self.levels),
            ', '.join('%g' % point for point in self.breaks))

    def __call__(self, y):
        index = np.searchsorted(self.breaks, y, side='left')
        values = self.levels[index]
        return values if np.ndim(y) else float(values)

    def partial(self, alpha):
        scalar = np.ndim(alpha) == 0
        upper = np.asarray(self.model.cdf(alpha), dtype=float)[..., None]
        edges = np.concatenate(([0.0], self.model.cdf(self.breaks), [1.0]))
        mass = np.clip(np.minimum(upper, edges[1:]) - edges[:-1], 0.0, None)
        values = np.sum(mass * self.levels, axis=-1)
        return float(values) if scalar else values


class FunctionWeight(WeightSpec):
    """ Arbitrary vectorized weight, integrated with adaptive quadrature """
    kind = WeightSpec.Kinds.FUNCTION

    def __init__(self, model, function, description='m', breakpoints=(), bound=None):
        super(FunctionWeight, self).__init__(model, bound=bound)
        self.function = function
        self.description = description
        self.breakpoints = sorted(float(point) for point in breakpoints)

    def describe(self):
        return self.description

    def __call__(self, y):
        values = np.asarray(self.function(np.asarray(y, dtype=float)), dtype=float)
        return values if np.ndim(y) else float(values)

    def _integrate(self, upper):
        model = self.model
        upper = min(float(upper), model.b)
        if upper <= model.a:
            return 0.0

        points = [point for point in self.breakpoints + model.breakpoints()
                  if model.a < point < upper]
        value, _ = integrate.quad(
            lambda y: float(self(y)) * float(model.density(y)), model.a, upper,
            points=sorted(set(points)) or None,
            epsabs=conf.get_setting('QUADRATURE_TOLERANCE'), limit=200)
        return value

    def partial(self, alpha):
        if np.ndim(alpha) == 0:
            return self._integrate(alpha)
        alpha = np.asarray(alpha, dtype=float)
        return np.fromiter((self._integrate(value) for value in alpha.ravel()),
                           dtype=float, count=alpha.size).reshape(alpha.shape)


class LimitCdf(object):
    """ Weighted limit c.d.f. F_s = G_s / G_s(inf) with G_s(alpha) = integral of m f over (-inf, alpha] """

    def __init__(self, weight):
        self.weight = weight
        self.model = weight.model
        self._quantile_cache = {}
        self._table = None
        weight.clean()
        self.clean()

    def __str__(self):
        return 'F_s for %s under %s' % (self.weight.describe(), self.model)

    @property
    def normalizer(self):
        return self.weight.normalizer

    def cdf(self, alpha):
        values = np.clip(np.asarray(self.weight.partial(alpha)) / self.normalizer, 0.0, 1.0)
        return values if np.ndim(alpha) else float(values)

    def unnormalized_cdf(self, alpha):
        return self.weight.partial(alpha)

    def unnormalized(self):
        return UnnormalizedLimit(self)

    def table(self, size=1000):
        """ F_s tabulated on a uniform grid of the support """
        if self._table is None or self._table[0].size != size:
            grid = self.model.support_grid(size)
            self._table = (grid, np.asarray(self.cdf(grid)))
        return self._table

    def clean(self):
        grid, values = self.table()
        if np.any(np.diff(values) < -1e-12):
            raise ValidationError('%s is not monotone' % self)
        if abs(values[0]) > BOUNDARY_TOLERANCE or abs(values[-1] - 1.0) > BOUNDARY_TOLERANCE:
            raise ValidationError('%s does not run from 0 to 1 over the support' % self)

    def quantile(self, p):
        """
        xi_s(p) = inf{y: F_s(y) >= p} by bisection on the support.
        Raises FlatRegionError when F_s equals p on an interval, because the quantile is then
        not continuous in p.
        """
        scalar = np.ndim(p) == 0
        key = None
        if not scalar:
            key = tuple(np.asarray(p, dtype=float).tolist())
            if key in self._quantile_cache:
                return self._quantile_cache[key]

        p = np.atleast_1d(np.asarray(p, dtype=float))
        if np.any((p <= 0) | (p >= 1)):
            raise ValueError('Quantile levels must lie in (0, 1)')

        lowest = self._bisect(p, lambda values, levels: values >= levels)
        highest = self._bisect(p, lambda values, levels: values > levels)
        flat = highest - lowest > 1e3 * BISECTION_TOLERANCE * max(1.0, self.model.b - self.model.a)
        if np.any(flat):
            level = float(p[np.argmax(flat)])
            raise FlatRegionError(
                '%s is flat at level %s on [%s, %s]' % (self, level, lowest[np.argmax(flat)],
                                                         highest[np.argmax(flat)]))

        if scalar:
            return float(lowest[0])
        self._quantile_cache[key] = lowest
        return lowest

    def _bisect(self, levels, predicate):
        """ Smallest y in the support with predicate(F_s(y), level), for every level at once """
        lo = np.full(levels.shape, self.model.a)
        hi = np.full(levels.shape, self.model.b)
        while np.max(hi - lo) > BISECTION_TOLERANCE:
            middle = (lo + hi) / 2.0
            accept = predicate(np.asarray(self.cdf(middle)), levels)
            hi = np.where(accept, middle, hi)
            lo = np.where(accept, lo, middle)
        return hi


class UnnormalizedLimit(object):
    """ G_s seen as a comparison target, used by the literal form of the coupling statistic """

    def __init__(self, limit):
        self.limit = limit

    def cdf(self, alpha):
        return self.limit.unnormalized_cdf(alpha)
