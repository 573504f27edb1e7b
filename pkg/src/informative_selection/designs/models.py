from __future__ import unicode_literals

import itertools
import logging
import math

import numpy as np
from django.core.exceptions import ValidationError
from scipy import special, stats

from informative_selection import conf
from informative_selection.exceptions import InfeasibleEnumeration, NoLimitError, UnsupportedDesign
from informative_selection.weights.models import ConstantWeight, FunctionWeight, LinearWeight, StepWeight


logger = logging.getLogger(__name__)

SIZE_EPSILON = 1e-9


class IndicatorVector(object):
    """ Selection counts I_k for every population unit: 0/1, or draw counts under with-replacement designs """

    def __init__(self, counts, clamped=0):
        counts = np.array(counts, dtype=np.int64)
        if counts.ndim != 1:
            raise ValidationError('Indicator counts must form a vector')
        if np.any(counts < 0):
            raise ValidationError('Indicator counts must be non-negative')
        counts.flags.writeable = False
        self.counts = counts
        self.clamped = int(clamped)

    def __len__(self):
        return self.counts.size

    def __eq__(self, other):
        return isinstance(other, IndicatorVector) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return 'IndicatorVector(%s)' % self.to_string()

    @property
    def N(self):
        return self.counts.size

    @property
    def n(self):
        return int(self.counts.sum())

    @property
    def is_empty(self):
        return not self.counts.any()

    def key(self):
        return tuple(int(count) for count in self.counts)

    def permuted(self, permutation):
        return IndicatorVector(self.counts[np.asarray(permutation)])

    def to_string(self):
        if self.counts.size and self.counts.max() > 9:
            return '.'.join(str(count) for count in self.counts)
        return ''.join(str(count) for count in self.counts)


def _check_support_size(count):
    limit = conf.get_setting('ENUMERATION_LIMIT')
    if count > limit:
        raise InfeasibleEnumeration('Design support has %s points, enumeration limit is %s' % (count, limit))


def _bit_table(N):
    _check_support_size(2 ** N)
    codes = np.arange(2 ** N, dtype=np.int64)[:, None]
    return ((codes >> np.arange(N - 1, -1, -1)) & 1).astype(np.int8)


def _product_probabilities(table, pi):
    """ Probability of every 0/1 row under independent Bernoulli(pi_k) selection """
    pi = np.asarray(pi, dtype=float)
    return np.prod(np.where(table == 1, pi, 1.0 - pi), axis=1)


def _combination_table(N, eligible, size, fixed=()):
    eligible = list(eligible)
    _check_support_size(special.comb(len(eligible), size, exact=True))
    rows = []
    for chosen in itertools.combinations(eligible, size):
        row = np.zeros(N, dtype=np.int8)
        row[list(fixed)] = 1
        row[list(chosen)] = 1
        rows.append(row)
    return np.array(rows, dtype=np.int8).reshape(len(rows), N)


def _resolve_size(n, fraction, N):
    if n is not None:
        return int(n)
    return int(math.floor(fraction * N + SIZE_EPSILON))


class Design(object):
    """
    Selection mechanism: the conditional law g(i, y) of the indicator vector given the responses.
    Concrete designs implement ``draw`` and ``support``; probabilities are exact.
    """
    class Variants(object):
        SRSWOR = 'srswor'
        BERNOULLI = 'bernoulli'
        POISSON_FIXED_PI = 'poisson_fixed_pi'
        POISSON_PROPORTIONAL_Z = 'poisson_proportional_z'
        POISSON_PATHOLOGICAL = 'poisson_pathological'
        LENGTH_BIASED = 'length_biased'
        CLUSTER_SPLIT = 'cluster_split'
        CUTOFF = 'cutoff'
        PPS_WITH_REPLACEMENT = 'pps_with_replacement'
        ENDOGENOUS_STRATA = 'endogenous_strata'

        CHOICES = (
            (SRSWOR, 'Simple random sampling without replacement'),
            (BERNOULLI, 'Bernoulli sampling'),
            (POISSON_FIXED_PI, 'Poisson sampling with permuted fixed probabilities'),
            (POISSON_PROPORTIONAL_Z, 'Poisson sampling proportional to an independent size'),
            (POISSON_PATHOLOGICAL, 'Poisson sampling with a shared random level'),
            (LENGTH_BIASED, 'Length-biased Poisson sampling'),
            (CLUSTER_SPLIT, 'Two-cluster split at a threshold'),
            (CUTOFF, 'Cut-off or take-all sampling'),
            (PPS_WITH_REPLACEMENT, 'Probability proportional to size with replacement'),
            (ENDOGENOUS_STRATA, 'Endogenous stratification on order statistics'),
        )

    variant = None
    with_replacement = False
    # selection is independent of the responses
    independent = False
    enumerable = True

    def __str__(self):
        parameters = ', '.join('%s=%s' % item for item in sorted(self.parameters().items()))
        return '%s(%s)' % (self.variant, parameters)

    def parameters(self):
        return {}

    def to_dict(self):
        data = {'variant': self.variant}
        data.update(self.parameters())
        return data

    def clean(self):
        pass

    def check(self, population):
        """ Validate the size-dependent invariants for this population """
        pass

    def draw(self, population, rng):
        raise NotImplementedError

    def support(self, population):
        """ Every indicator vector with g(i, y) > 0, as a (rows, probabilities) pair """
        raise UnsupportedDesign('%s cannot be enumerated' % self.variant)

    def expected_sample_size(self, population):
        raise NotImplementedError

    def empty_probability(self, population):
        """ Exact g((0, ..., 0), y), or None when it has no closed form """
        return None

    def inclusion(self, y, model, N):
        """ Exact m_gamma(y) at population size N, or None when unavailable """
        return None

    def limit_inclusion(self, y, model):
        """ Pointwise limit m(y) of m_gamma, or None when there is none """
        try:
            return self.limit_weight(model)(y)
        except NoLimitError:
            return None

    def limit_weight(self, model):
        raise NoLimitError('%s has no limit weight' % self)

    def finite_weight(self, model, N):
        """ m_gamma at population size N as a weight function """
        if self.inclusion(model.a, model, N) is None:
            raise UnsupportedDesign('%s has no closed form inclusion probability at finite N' % self)
        return FunctionWeight(
            model, lambda y: self.inclusion(y, model, N),
            description='m_gamma of %s at N=%s' % (self, N), breakpoints=self.weight_breakpoints(model),
            bound=1.0 if not self.with_replacement else None)

    def weight_breakpoints(self, model):
        return ()


class SimpleRandomSampling(Design):
    variant = Design.Variants.SRSWOR
    independent = True

    def __init__(self, n=None, fraction=None):
        self.n = n
        self.fraction = fraction
        self.clean()

    def parameters(self):
        if self.n is not None:
            return {'n': self.n}
        return {'fraction': self.fraction}

    def clean(self):
        if (self.n is None) == (self.fraction is None):
            raise ValidationError('Simple random sampling needs exactly one of n and fraction')
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            raise ValidationError('Sample size must be a positive integer, got %s' % self.n)
        if self.fraction is not None and not 0 < self.fraction <= 1:
            raise ValidationError('Sampling fraction must lie in (0, 1], got %s' % self.fraction)

    def size(self, N):
        return _resolve_size(self.n, self.fraction, N)

    def check(self, population):
        size = self.size(population.N)
        if not 1 <= size <= population.N:
            raise ValidationError('Sample size %s is not feasible for N=%s' % (size, population.N))

    def draw(self, population, rng):
        counts = np.zeros(population.N, dtype=np.int64)
        counts[rng.choice(population.N, size=self.size(population.N), replace=False)] = 1
        return IndicatorVector(counts)

    def support(self, population):
        table = _combination_table(population.N, range(population.N), self.size(population.N))
        return table, np.full(len(table), 1.0 / len(table))

    def expected_sample_size(self, population):
        return float(self.size(population.N))

    def empty_probability(self, population):
        return 0.0

    def inclusion(self, y, model, N):
        value = self.size(N) / float(N)
        return np.full(np.shape(y), value) if np.ndim(y) else value

    def limit_weight(self, model):
        if self.fraction is None:
            raise NoLimitError('Fixed sample size %s gives m = 0, A0.2 fails' % self.n)
        return ConstantWeight(model, self.fraction, bound=1.0)


class Bernoulli(Design):
    variant = Design.Variants.BERNOULLI
    independent = True

    def __init__(self, p):
        self.p = float(p)
        self.clean()

    def parameters(self):
        return {'p': self.p}

    def clean(self):
        if not 0 < self.p <= 1:
            raise ValidationError('Bernoulli probability must lie in (0, 1], got %s' % self.p)

    def draw(self, population, rng):
        return IndicatorVector(rng.random(population.N) < self.p)

    def support(self, population):
        table = _bit_table(population.N)
        probabilities = _product_probabilities(table, np.full(population.N, self.p))
        keep = probabilities > 0
        return table[keep], probabilities[keep]

    def expected_sample_size(self, population):
        return population.N * self.p

    def empty_probability(self, population):
        return (1.0 - self.p) ** population.N

    def inclusion(self, y, model, N):
        return np.full(np.shape(y), self.p) if np.ndim(y) else self.p

    def limit_weight(self, model):
        return ConstantWeight(model, self.p, bound=1.0)


class PoissonFixedPi(Design):
    """
    Poisson sampling with probabilities taken from a fixed pattern, repeated to length N.
    With ``permuted`` the probabilities are randomly permuted across units on every draw.
    """
    variant = Design.Variants.POISSON_FIXED_PI
    independent = True

    def __init__(self, pi, permuted=True):
        self.pi = [float(value) for value in pi]
        self.permuted = bool(permuted)
        self.clean()

    def parameters(self):
        return {'pi': self.pi, 'permuted': self.permuted}

    def clean(self):
        if not self.pi:
            raise ValidationError('Poisson sampling needs at least one inclusion probability')
        if any(not 0 < value <= 1 for value in self.pi):
            raise ValidationError('Inclusion probabilities must lie in (0, 1]')

    def probabilities(self, N):
        return np.resize(np.asarray(self.pi), N)

    def draw(self, population, rng):
        pi = self.probabilities(population.N)
        if self.permuted:
            pi = rng.permutation(pi)
        return IndicatorVector(rng.random(population.N) < pi)

    def support(self, population):
        N = population.N
        pi = self.probabilities(N)
        table = _bit_table(N)
        if not self.permuted:
            probabilities = _product_probabilities(table, pi)
        else:
            _check_support_size(math.factorial(N) * 2 ** N)
            orderings = list(itertools.permutations(range(N)))
            probabilities = np.zeros(len(table))
            for ordering in orderings:
                probabilities += _product_probabilities(table, pi[list(ordering)])
            probabilities /= len(orderings)
        keep = probabilities > 0
        return table[keep], probabilities[keep]

    def expected_sample_size(self, population):
        return float(np.sum(self.probabilities(population.N)))

    def empty_probability(self, population):
        return float(np.prod(1.0 - self.probabilities(population.N)))

    def inclusion(self, y, model, N):
        value = float(np.mean(self.probabilities(N)))
        return np.full(np.shape(y), value) if np.ndim(y) else value

    def limit_weight(self, model):
        return ConstantWeight(model, float(np.mean(self.pi)), bound=1.0)


class PoissonProportionalZ(Design):
    """
    Poisson sampling with Pi_k = n* Z_k / sum Z, Z drawn i.i.d. from ``z_model`` independently of Y.
    Probabilities above one are clamped and the number of clamped units is kept on the indicator.
    """
    variant = Design.Variants.POISSON_PROPORTIONAL_Z
    independent = True
    enumerable = False

    def __init__(self, z_model, n_star=None, fraction=None):
        self.z_model = z_model
        self.n_star = n_star
        self.fraction = fraction
        self.clean()

    def parameters(self):
        data = {'z_model': self.z_model.to_dict()}
        if self.n_star is not None:
            data['n_star'] = self.n_star
        else:
            data['fraction'] = self.fraction
        return data

    def clean(self):
        if (self.n_star is None) == (self.fraction is None):
            raise ValidationError('Proportional Poisson sampling needs exactly one of n_star and fraction')
        if self.n_star is not None and not self.n_star > 0:
            raise ValidationError('Expected sample size must be positive, got %s' % self.n_star)
        if self.fraction is not None and not 0 < self.fraction <= 1:
            raise ValidationError('Sampling fraction must lie in (0, 1], got %s' % self.fraction)
        if not self.z_model.b > 0:
            raise ValidationError('Size variable Z must be positive')

    def size(self, N):
        if self.n_star is not None:
            return float(self.n_star)
        return self.fraction * N

    def check(self, population):
        if self.size(population.N) > population.N:
            raise ValidationError('Expected sample size exceeds N=%s' % population.N)

    def draw(self, population, rng):
        z = self.z_model.quantile(rng.random(population.N))
        pi = self.size(population.N) * z / np.sum(z)
        clamped = int(np.count_nonzero(pi > 1))
        if clamped:
            logger.warning('Clamped %s inclusion probabilities above one for %s', clamped, self)
        pi = np.minimum(pi, 1.0)
        return IndicatorVector(rng.random(population.N) < pi, clamped=clamped)

    def expected_sample_size(self, population):
        # exact unless probabilities get clamped
        return self.size(population.N)

    def inclusion(self, y, model, N):
        value = self.size(N) / float(N)
        return np.full(np.shape(y), value) if np.ndim(y) else value

    def limit_weight(self, model):
        if self.fraction is None:
            raise NoLimitError('Fixed expected size %s gives m = 0, A0.2 fails' % self.n_star)
        return ConstantWeight(model, self.fraction, bound=1.0)


class PoissonPathological(Design):
    """ All units share one Poisson level, a or b with probability 1/2 each, drawn once per sample """
    variant = Design.Variants.POISSON_PATHOLOGICAL
    independent = True

    def __init__(self, a, b):
        self.a = float(a)
        self.b = float(b)
        self.clean()

    def parameters(self):
        return {'a': self.a, 'b': self.b}

    def clean(self):
        if not (0 < self.a <= 1 and 0 < self.b <= 1):
            raise ValidationError('Both levels must lie in (0, 1]')
        if self.a == self.b:
            raise ValidationError('Levels must differ')

    def draw(self, population, rng):
        level = self.a if rng.random() < 0.5 else self.b
        return IndicatorVector(rng.random(population.N) < level)

    def support(self, population):
        N = population.N
        table = _bit_table(N)
        probabilities = (0.5 * _product_probabilities(table, np.full(N, self.a))
                         + 0.5 * _product_probabilities(table, np.full(N, self.b)))
        keep = probabilities > 0
        return table[keep], probabilities[keep]

    def expected_sample_size(self, population):
        return population.N * (self.a + self.b) / 2.0

    def empty_probability(self, population):
        return 0.5 * (1.0 - self.a) ** population.N + 0.5 * (1.0 - self.b) ** population.N

    def inclusion(self, y, model, N):
        value = (self.a + self.b) / 2.0
        return np.full(np.shape(y), value) if np.ndim(y) else value

    def limit_weight(self, model):
        raise NoLimitError('%s: Var(n) is not o(N^2), A4 fails' % self)


class LengthBiasedPoisson(Design):
    """ Poisson sampling with P(I_k = 1 | Y_k = y) = tau_N y, tau_N = tau (1 + tau_offset / N) """
    variant = Design.Variants.LENGTH_BIASED

    def __init__(self, tau, tau_offset=0.0):
        self.tau = float(tau)
        self.tau_offset = float(tau_offset)
        self.clean()

    def parameters(self):
        return {'tau': self.tau, 'tau_offset': self.tau_offset}

    def clean(self):
        if not self.tau > 0:
            raise ValidationError('Proportionality constant must be positive, got %s' % self.tau)

    def tau_at(self, N):
        return self.tau * (1.0 + self.tau_offset / float(N))

    def check(self, population):
        tau = self.tau_at(population.N)
        if tau < 0:
            raise ValidationError('tau_N is negative for N=%s (tau_N=%s)' % (population.N, tau))
        upper = population.responses.max()
        if population.model is not None:
            upper = max(upper, population.model.b)
        if tau * upper > 1 or population.responses.min() < 0:
            raise ValidationError('tau_N * y exceeds 1 for N=%s (tau_N=%s, max y=%s)'
                                  % (population.N, tau, upper))

    def probabilities(self, population):
        return self.tau_at(population.N) * population.responses

    def draw(self, population, rng):
        return IndicatorVector(rng.random(population.N) < self.probabilities(population))

    def support(self, population):
        table = _bit_table(population.N)
        probabilities = _product_probabilities(table, self.probabilities(population))
        keep = probabilities > 0
        return table[keep], probabilities[keep]

    def expected_sample_size(self, population):
        return float(np.sum(self.probabilities(population)))

    def empty_probability(self, population):
        return float(np.prod(1.0 - self.probabilities(population)))

    def inclusion(self, y, model, N):
        values = self.tau_at(N) * np.asarray(y, dtype=float)
        return values if np.ndim(y) else float(values)

    def finite_weight(self, model, N):
        return LinearWeight(model, self.tau_at(N), bound=1.0)

    def limit_weight(self, model):
        return LinearWeight(model, self.tau, bound=1.0)


class ClusterSplit(Design):
    """ Selects either every unit with y <= tau or every unit with y > tau, each with probability 1/2 """
    variant = Design.Variants.CLUSTER_SPLIT

    def __init__(self, tau):
        self.tau = float(tau)

    def parameters(self):
        return {'tau': self.tau}

    def clusters(self, population):
        lower = population.responses <= self.tau
        return lower.astype(np.int8), (~lower).astype(np.int8)

    def draw(self, population, rng):
        lower, upper = self.clusters(population)
        return IndicatorVector(lower if rng.random() < 0.5 else upper)

    def support(self, population):
        lower, upper = self.clusters(population)
        return np.array([lower, upper], dtype=np.int8), np.array([0.5, 0.5])

    def expected_sample_size(self, population):
        return population.N / 2.0

    def empty_probability(self, population):
        lower, upper = self.clusters(population)
        return 0.5 * (not lower.any()) + 0.5 * (not upper.any())

    def inclusion(self, y, model, N):
        return np.full(np.shape(y), 0.5) if np.ndim(y) else 0.5

    def limit_weight(self, model):
        raise NoLimitError('%s: selected clusters stay dependent, A1.1 fails' % self)


class CutOff(Design):
    """
    Units with y <= tau are never selected (cut-off mode) or always selected (take-all mode);
    the others get a simple random sample, of size min(n, N - S) in cut-off mode and of the
    remaining max(n - S, 0) units in take-all mode, S being the number of units with y <= tau.
    """
    variant = Design.Variants.CUTOFF

    class Modes(object):
        CUTOFF = 'cutoff'
        TAKE_ALL = 'take_all'

        CHOICES = ((CUTOFF, 'Cut-off'), (TAKE_ALL, 'Take-all'))

    def __init__(self, tau, n=None, fraction=None, mode=Modes.CUTOFF):
        self.tau = float(tau)
        self.n = n
        self.fraction = fraction
        self.mode = mode
        self.clean()

    def parameters(self):
        data = {'tau': self.tau, 'mode': self.mode}
        if self.n is not None:
            data['n'] = self.n
        else:
            data['fraction'] = self.fraction
        return data

    def clean(self):
        if self.mode not in (self.Modes.CUTOFF, self.Modes.TAKE_ALL):
            raise ValidationError('Unknown cut-off mode %s' % self.mode)
        if (self.n is None) == (self.fraction is None):
            raise ValidationError('Cut-off sampling needs exactly one of n and fraction')
        if self.n is not None and (int(self.n) != self.n or self.n < 0):
            raise ValidationError('Sample size must be a non-negative integer, got %s' % self.n)
        if self.fraction is not None and not 0 <= self.fraction <= 1:
            raise ValidationError('Sampling rate must lie in [0, 1], got %s' % self.fraction)

    def size(self, N):
        return _resolve_size(self.n, self.fraction, N)

    def check(self, population):
        if self.size(population.N) > population.N:
            raise ValidationError('Sample size exceeds N=%s' % population.N)

    def _srs_size(self, N, below):
        if self.mode == self.Modes.CUTOFF:
            return min(self.size(N), N - below)
        return min(max(self.size(N) - below, 0), N - below)

    def draw(self, population, rng):
        below = population.responses <= self.tau
        counts = below.astype(np.int64) if self.mode == self.Modes.TAKE_ALL else np.zeros(population.N, np.int64)
        eligible = np.flatnonzero(~below)
        size = self._srs_size(population.N, int(below.sum()))
        if size:
            counts[rng.choice(eligible, size=size, replace=False)] = 1
        return IndicatorVector(counts)

    def support(self, population):
        below = population.responses <= self.tau
        fixed = np.flatnonzero(below) if self.mode == self.Modes.TAKE_ALL else ()
        table = _combination_table(population.N, np.flatnonzero(~below),
                                   self._srs_size(population.N, int(below.sum())), fixed=fixed)
        return table, np.full(len(table), 1.0 / len(table))

    def expected_sample_size(self, population):
        below = int(np.sum(population.responses <= self.tau))
        size = self._srs_size(population.N, below)
        if self.mode == self.Modes.TAKE_ALL:
            return float(below + size)
        return float(size)

    def empty_probability(self, population):
        return 0.0 if self.expected_sample_size(population) > 0 else 1.0

    def _above_inclusion(self, model, N):
        # inclusion of a unit above tau, averaging over the number S of other units below tau
        others_below = np.arange(N)
        weights = stats.binom.pmf(others_below, N - 1, model.cdf(self.tau))
        eligible = N - others_below
        sizes = np.array([self._srs_size(N, int(below)) for below in others_below])
        return float(np.sum(weights * sizes / eligible))

    def inclusion(self, y, model, N):
        below = np.asarray(y, dtype=float) <= self.tau
        above_value = self._above_inclusion(model, N)
        below_value = 1.0 if self.mode == self.Modes.TAKE_ALL else 0.0
        values = np.where(below, below_value, above_value)
        return values if np.ndim(y) else float(values)

    def limit_levels(self, model):
        rho = self.fraction if self.fraction is not None else 0.0
        below_mass = model.cdf(self.tau)
        if below_mass >= 1:
            above = 0.0
        elif self.mode == self.Modes.CUTOFF:
            above = min(rho, 1.0 - below_mass) / (1.0 - below_mass)
        else:
            above = max(rho - below_mass, 0.0) / (1.0 - below_mass)
        below = 1.0 if self.mode == self.Modes.TAKE_ALL else 0.0
        return below, above

    def weight_breakpoints(self, model):
        return (self.tau,)

    def limit_weight(self, model):
        below, above = self.limit_levels(model)
        below_mass = model.cdf(self.tau)
        if below * below_mass + above * (1.0 - below_mass) <= 0:
            raise NoLimitError('%s selects a vanishing fraction of the population, A0.2 fails' % self)
        return StepWeight(model, [self.tau], [below, above], bound=1.0)


class PpsWithReplacement(Design):
    """ n independent draws, unit k selected on each draw with probability y_k / sum y """
    variant = Design.Variants.PPS_WITH_REPLACEMENT
    with_replacement = True

    def __init__(self, n=None, fraction=None):
        self.n = n
        self.fraction = fraction
        self.clean()

    def parameters(self):
        if self.n is not None:
            return {'n': self.n}
        return {'fraction': self.fraction}

    def clean(self):
        if (self.n is None) == (self.fraction is None):
            raise ValidationError('PPS sampling needs exactly one of n and fraction')
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            raise ValidationError('Number of draws must be a positive integer, got %s' % self.n)
        if self.fraction is not None and not 0 < self.fraction < 1:
            raise ValidationError('Draw rate must lie in (0, 1), got %s' % self.fraction)

    def size(self, N):
        return _resolve_size(self.n, self.fraction, N)

    def check(self, population):
        size = self.size(population.N)
        if not 1 <= size < population.N:
            raise ValidationError('Number of draws %s is not feasible for N=%s' % (size, population.N))
        if np.any(population.responses <= 0):
            raise ValidationError('PPS sampling needs strictly positive responses')

    def selection_probabilities(self, population):
        return population.responses / np.sum(population.responses)

    def draw(self, population, rng):
        cumulative = np.cumsum(self.selection_probabilities(population))
        draws = np.searchsorted(cumulative / cumulative[-1], rng.random(self.size(population.N)), side='right')
        draws = np.minimum(draws, population.N - 1)
        return IndicatorVector(np.bincount(draws, minlength=population.N))

    def support(self, population):
        N = population.N
        size = self.size(N)
        _check_support_size(special.comb(size + N - 1, N - 1, exact=True))
        table = np.array([np.bincount(draws, minlength=N)
                          for draws in itertools.combinations_with_replacement(range(N), size)],
                         dtype=np.int64)
        probabilities = stats.multinomial.pmf(table, size, self.selection_probabilities(population))
        return table, np.asarray(probabilities, dtype=float)

    def expected_sample_size(self, population):
        return float(self.size(population.N))

    def empty_probability(self, population):
        return 0.0

    def limit_weight(self, model):
        if self.fraction is None:
            raise NoLimitError('Fixed number of draws %s gives m = 0, A0.2 fails' % self.n)
        return LinearWeight(model, self.fraction / model.moment(1))


class EndogenousStrata(Design):
    """
    Stratification on the order statistics of y: the smallest N_1 responses form stratum 1,
    the next N_2 stratum 2 and so on; a simple random sample of n_h units is drawn in stratum h.
    Stratum sizes follow ``stratum_fractions`` of N, sample sizes ``sampling_fractions`` of N_h.
    """
    variant = Design.Variants.ENDOGENOUS_STRATA

    def __init__(self, stratum_fractions, sampling_fractions):
        self.stratum_fractions = [float(value) for value in stratum_fractions]
        self.sampling_fractions = [float(value) for value in sampling_fractions]
        self.clean()

    def parameters(self):
        return {'stratum_fractions': self.stratum_fractions, 'sampling_fractions': self.sampling_fractions}

    def clean(self):
        if not self.stratum_fractions or len(self.stratum_fractions) != len(self.sampling_fractions):
            raise ValidationError('Every stratum needs a population fraction and a sampling fraction')
        if any(value <= 0 for value in self.stratum_fractions):
            raise ValidationError('Stratum fractions must be positive')
        if abs(sum(self.stratum_fractions) - 1.0) > 1e-9:
            raise ValidationError('Stratum fractions must sum to one')
        if any(not 0 <= value <= 1 for value in self.sampling_fractions):
            raise ValidationError('Sampling fractions must lie in [0, 1]')

    def allocation(self, N):
        """ Stratum boundaries M_0 = 0 < ... < M_H = N and sample sizes n_h """
        boundaries = np.floor(N * np.cumsum(self.stratum_fractions) + 0.5).astype(np.int64)
        boundaries[-1] = N
        boundaries = np.concatenate(([0], boundaries))
        stratum_sizes = np.diff(boundaries)
        sample_sizes = np.floor(stratum_sizes * np.asarray(self.sampling_fractions) + 0.5).astype(np.int64)
        return boundaries, np.minimum(sample_sizes, stratum_sizes)

    def check(self, population):
        boundaries, _ = self.allocation(population.N)
        if np.any(np.diff(boundaries) < 1):
            raise ValidationError('N=%s is too small for %s strata' % (population.N, len(self.stratum_fractions)))

    def strata(self, population):
        order = np.argsort(population.responses, kind='stable')
        boundaries, sample_sizes = self.allocation(population.N)
        return [(order[lo:hi], size) for lo, hi, size in zip(boundaries[:-1], boundaries[1:], sample_sizes)]

    def draw(self, population, rng):
        counts = np.zeros(population.N, dtype=np.int64)
        for members, size in self.strata(population):
            if size:
                counts[rng.choice(members, size=size, replace=False)] = 1
        return IndicatorVector(counts)

    def support(self, population):
        strata = self.strata(population)
        count = 1
        for members, size in strata:
            count *= special.comb(len(members), size, exact=True)
        _check_support_size(count)

        choices = [list(itertools.combinations(members.tolist(), int(size))) for members, size in strata]
        rows = []
        for selection in itertools.product(*choices):
            row = np.zeros(population.N, dtype=np.int8)
            for chosen in selection:
                row[list(chosen)] = 1
            rows.append(row)
        return np.array(rows, dtype=np.int8), np.full(len(rows), 1.0 / len(rows))

    def expected_sample_size(self, population):
        _, sample_sizes = self.allocation(population.N)
        return float(np.sum(sample_sizes))

    def empty_probability(self, population):
        return 0.0 if self.expected_sample_size(population) > 0 else 1.0

    def inclusion(self, y, model, N):
        # the number B of other units below y is Binomial(N - 1, F(y)); the unit is in stratum h
        # when M_{h-1} <= B <= M_h - 1
        boundaries, sample_sizes = self.allocation(N)
        rates = sample_sizes / np.diff(boundaries).astype(float)
        below = np.asarray(model.cdf(y), dtype=float)[..., None]
        mass = (stats.binom.cdf(boundaries[1:] - 1, N - 1, below)
                - stats.binom.cdf(boundaries[:-1] - 1, N - 1, below))
        values = np.sum(mass * rates, axis=-1)
        return values if np.ndim(y) else float(values)

    def limit_weight(self, model):
        edges = np.cumsum(self.stratum_fractions)[:-1]
        return StepWeight(model, model.quantile(edges), self.sampling_fractions, bound=1.0)

    def weight_breakpoints(self, model):
        return tuple(model.quantile(np.cumsum(self.stratum_fractions)[:-1]))
