from __future__ import unicode_literals

import logging
import math

import numpy as np
from django.core.exceptions import ValidationError
from scipy import integrate

from informative_selection import conf


logger = logging.getLogger(__name__)

MAX_MOMENT = 6
NORMALIZATION_TOLERANCE = 1e-9


def _output(values, scalar):
    if scalar:
        return float(values)
    return values


class SuperpopModel(object):
    """
    Superpopulation law of the responses: density f and c.d.f. F with compact support [a, b].
    All evaluation methods accept scalars or arrays.
    """
    class Kinds(object):
        UNIFORM = 'uniform'
        TRUNCATED_EXPONENTIAL = 'truncated_exponential'
        PIECEWISE_LINEAR = 'piecewise_linear'

        CHOICES = (
            (UNIFORM, 'Uniform'),
            (TRUNCATED_EXPONENTIAL, 'Truncated exponential'),
            (PIECEWISE_LINEAR, 'Piecewise linear density'),
        )

    kind = None

    def __init__(self, a, b):
        self.a = float(a)
        self.b = float(b)

    def __str__(self):
        return '%s(%g, %g)' % (self.kind, self.a, self.b)

    def clean(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValidationError('Support bounds must be finite')
        if self.a < 0:
            raise ValidationError('Support lower bound must be non-negative, got %s' % self.a)
        if self.a >= self.b:
            raise ValidationError('Support must satisfy a < b, got [%s, %s]' % (self.a, self.b))

    def check_normalization(self):
        tolerance = conf.get_setting('QUADRATURE_TOLERANCE')
        total, _ = integrate.quad(
            self.density, self.a, self.b, points=self.breakpoints()[1:-1] or None,
            epsabs=tolerance, limit=200)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationError('Density integrates to %r instead of 1' % total)

    def breakpoints(self):
        return [self.a, self.b]

    def density(self, y):
        raise NotImplementedError

    def cdf(self, alpha):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    def partial_moment(self, k, alpha):
        """ Integral of y**k f(y) over (-inf, alpha] """
        raise NotImplementedError

    def moment(self, k):
        if int(k) != k or not 1 <= k <= MAX_MOMENT:
            raise ValueError('Moments of order 1..%s are supported, got %s' % (MAX_MOMENT, k))
        return float(self.partial_moment(int(k), self.b))

    def support_grid(self, size=1000):
        return np.linspace(self.a, self.b, size)

    def to_dict(self):
        return {'kind': self.kind, 'a': self.a, 'b': self.b}


class Uniform(SuperpopModel):
    kind = SuperpopModel.Kinds.UNIFORM

    def __init__(self, a=0.0, b=1.0):
        super(Uniform, self).__init__(a, b)
        self.clean()

    def density(self, y):
        scalar = np.ndim(y) == 0
        y = np.asarray(y, dtype=float)
        inside = (y >= self.a) & (y <= self.b)
        return _output(np.where(inside, 1.0 / (self.b - self.a), 0.0), scalar)

    def cdf(self, alpha):
        scalar = np.ndim(alpha) == 0
        alpha = np.asarray(alpha, dtype=float)
        return _output(np.clip((alpha - self.a) / (self.b - self.a), 0.0, 1.0), scalar)

    def quantile(self, u):
        scalar = np.ndim(u) == 0
        u = np.asarray(u, dtype=float)
        return _output(self.a + u * (self.b - self.a), scalar)

    def partial_moment(self, k, alpha):
        scalar = np.ndim(alpha) == 0
        upper = np.clip(np.asarray(alpha, dtype=float), self.a, self.b)
        values = (upper ** (k + 1) - self.a ** (k + 1)) / ((k + 1) * (self.b - self.a))
        return _output(values, scalar)


class TruncatedExponential(SuperpopModel):
    kind = SuperpopModel.Kinds.TRUNCATED_EXPONENTIAL

    def __init__(self, rate=1.0, a=0.0, b=1.0):
        super(TruncatedExponential, self).__init__(a, b)
        self.rate = float(rate)
        self.clean()

    def __str__(self):
        return '%s(rate=%g, %g, %g)' % (self.kind, self.rate, self.a, self.b)

    def clean(self):
        super(TruncatedExponential, self).clean()
        if not self.rate > 0:
            raise ValidationError('Exponential rate must be positive, got %s' % self.rate)

    @property
    def mass(self):
        return -math.expm1(-self.rate * (self.b - self.a))

    def density(self, y):
        scalar = np.ndim(y) == 0
        y = np.asarray(y, dtype=float)
        inside = (y >= self.a) & (y <= self.b)
        values = self.rate * np.exp(-self.rate * (np.clip(y, self.a, self.b) - self.a)) / self.mass
        return _output(np.where(inside, values, 0.0), scalar)

    def cdf(self, alpha):
        scalar = np.ndim(alpha) == 0
        upper = np.clip(np.asarray(alpha, dtype=float), self.a, self.b)
        values = -np.expm1(-self.rate * (upper - self.a)) / self.mass
        return _output(np.clip(values, 0.0, 1.0), scalar)

    def quantile(self, u):
        scalar = np.ndim(u) == 0
        u = np.asarray(u, dtype=float)
        values = self.a - np.log1p(-u * self.mass) / self.rate
        return _output(np.clip(values, self.a, self.b), scalar)

    def partial_moment(self, k, alpha):
        # antiderivative of y**k rate exp(-rate (y - a)) is
        # -exp(-rate (y - a)) sum_j k!/j! y**j / rate**(k - j)
        scalar = np.ndim(alpha) == 0
        upper = np.clip(np.asarray(alpha, dtype=float), self.a, self.b)
        decay = np.exp(-self.rate * (upper - self.a))
        total = np.zeros_like(upper)
        for j in range(k + 1):
            coefficient = math.factorial(k) / math.factorial(j) / self.rate ** (k - j)
            total = total + coefficient * (self.a ** j - upper ** j * decay)
        return _output(total / self.mass, scalar)


class PiecewiseLinearDensity(SuperpopModel):
    """
    Density interpolating linearly between knots (y, f(y)).
    Knot heights are rescaled at construction so that the density integrates to one.
    """
    kind = SuperpopModel.Kinds.PIECEWISE_LINEAR

    def __init__(self, knots):
        knots = [(float(y), float(height)) for y, height in knots]
        if len(knots) < 2:
            raise ValidationError('Piecewise linear density needs at least two knots')

        self.xs = np.array([y for y, _ in knots])
        heights = np.array([height for _, height in knots])
        super(PiecewiseLinearDensity, self).__init__(self.xs[0], self.xs[-1])

        if np.any(np.diff(self.xs) <= 0):
            raise ValidationError('Knot positions must be strictly increasing')
        if np.any(heights < 0) or not np.all(np.isfinite(heights)):
            raise ValidationError('Knot heights must be finite and non-negative')

        area = float(np.sum(np.diff(self.xs) * (heights[1:] + heights[:-1]) / 2.0))
        if not area > 0:
            raise ValidationError('Knot heights enclose zero area')
        if abs(area - 1.0) > NORMALIZATION_TOLERANCE:
            logger.debug('Normalizing piecewise linear density with area %s', area)

        self.heights = heights / area
        self.widths = np.diff(self.xs)
        self.slopes = np.diff(self.heights) / self.widths
        self.cumulative = np.concatenate(
            ([0.0], np.cumsum(self.widths * (self.heights[1:] + self.heights[:-1]) / 2.0)))
        self.cumulative[-1] = 1.0
        self._moment_tables = {}
        self.clean()
        self.check_normalization()

    def __str__(self):
        return '%s(%d knots on [%g, %g])' % (self.kind, len(self.xs), self.a, self.b)

    def breakpoints(self):
        return list(self.xs)

    def _segments(self, values):
        return np.clip(np.searchsorted(self.xs, values, side='right') - 1, 0, len(self.xs) - 2)

    def density(self, y):
        scalar = np.ndim(y) == 0
        y = np.asarray(y, dtype=float)
        values = np.interp(y, self.xs, self.heights, left=0.0, right=0.0)
        return _output(values, scalar)

    def cdf(self, alpha):
        scalar = np.ndim(alpha) == 0
        upper = np.clip(np.asarray(alpha, dtype=float), self.a, self.b)
        segment = self._segments(upper)
        offset = upper - self.xs[segment]
        values = (self.cumulative[segment] + self.heights[segment] * offset
                  + self.slopes[segment] * offset ** 2 / 2.0)
        return _output(np.clip(values, 0.0, 1.0), scalar)

    def quantile(self, u):
        scalar = np.ndim(u) == 0
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        segment = np.clip(np.searchsorted(self.cumulative, u, side='left') - 1, 0, len(self.xs) - 2)
        remaining = u - self.cumulative[segment]
        height = self.heights[segment]
        # stable root of slope/2 t**2 + height t - remaining = 0
        denominator = height + np.sqrt(np.maximum(height ** 2 + 2.0 * self.slopes[segment] * remaining, 0.0))
        with np.errstate(divide='ignore', invalid='ignore'):
            offset = np.where(denominator > 0, 2.0 * remaining / denominator, 0.0)
        values = np.clip(self.xs[segment] + offset, self.xs[segment], self.xs[segment + 1])
        return _output(values, scalar)

    def _moment_table(self, k):
        if k not in self._moment_tables:
            tolerance = conf.get_setting('QUADRATURE_TOLERANCE')
            integrand = lambda y: y ** k * self.density(y)  # noqa: E731
            pieces = [integrate.quad(integrand, lo, hi, epsabs=tolerance)[0]
                      for lo, hi in zip(self.xs[:-1], self.xs[1:])]
            self._moment_tables[k] = np.concatenate(([0.0], np.cumsum(pieces)))
        return self._moment_tables[k]

    def partial_moment(self, k, alpha):
        scalar = np.ndim(alpha) == 0
        upper = np.clip(np.asarray(alpha, dtype=float), self.a, self.b)
        table = self._moment_table(k)
        segment = self._segments(upper)
        # y**k f(y) is a polynomial of degree k + 1 inside a segment,
        # so a Gauss-Legendre rule with this many nodes is exact there
        nodes, node_weights = np.polynomial.legendre.leggauss(k // 2 + 2)
        lower = np.asarray(self.xs[segment])
        half = np.asarray((upper - lower) / 2.0)
        points = lower[..., None] + half[..., None] * (nodes + 1.0)
        inner = np.sum(node_weights * points ** k * self.density(points), axis=-1) * half
        return _output(table[segment] + inner, scalar)

    def to_dict(self):
        return {'kind': self.kind, 'knots': [[float(y), float(h)] for y, h in zip(self.xs, self.heights)]}


class Population(object):
    """ Realized responses of a finite population, indexed 0..N-1 """

    def __init__(self, responses, model=None):
        responses = np.array(responses, dtype=float)
        if responses.ndim != 1 or responses.size == 0:
            raise ValidationError('Population needs a non-empty vector of responses')
        responses.flags.writeable = False
        self.responses = responses
        self.model = model

    def __len__(self):
        return self.responses.size

    def __str__(self):
        return 'Population of %d responses' % self.N

    @property
    def N(self):
        return self.responses.size

    def clean(self):
        if self.model is None:
            return
        if np.any(self.responses < self.model.a) or np.any(self.responses > self.model.b):
            raise ValidationError('Population responses fall outside the support of %s' % self.model)

    def prefix(self, N):
        if not 1 <= N <= self.N:
            raise ValidationError('Prefix size %s is outside 1..%s' % (N, self.N))
        return Population(self.responses[:N], model=self.model)

    def permuted(self, permutation):
        return Population(self.responses[np.asarray(permutation)], model=self.model)

    def with_fixed(self, values):
        """ Copy of the population with its first responses replaced by ``values`` """
        responses = self.responses.copy()
        responses[:len(values)] = values
        return Population(responses, model=self.model)
