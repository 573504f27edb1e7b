from __future__ import unicode_literals

import itertools
import logging
import math
from fractions import Fraction

import numpy as np
from django.core.exceptions import ValidationError
from scipy import special

from informative_selection import conf
from informative_selection.exceptions import NoLimitError
from informative_selection.seeding import make_rng, mix64
from informative_selection.stats import loglog_fit, mean_and_se, variance_and_se
from informative_selection.superpop.utils import draw_population
from informative_selection.weights.utils import m_monte_carlo, m_theoretical, pairwise_monte_carlo
from .models import ConditionEntry


logger = logging.getLogger(__name__)

Verdicts = ConditionEntry.Verdicts

MAX_IDENTITY_N = 20


def _check_grid(n_grid, minimum=1):
    sizes = [int(size) for size in n_grid]
    if len(sizes) < minimum:
        raise ValueError('N-grid needs at least %s sizes, got %s' % (minimum, len(sizes)))
    if any(size < 1 for size in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError('N-grid must be strictly increasing positive integers, got %s' % sizes)
    return sizes


def vanishing_verdict(sizes, estimates, standard_errors):
    """
    Verdict on "estimate = o(1)" along the N-grid; returns (verdict, log-log fit).
    Vanishing means a fitted slope below DECAY_SLOPE_THRESHOLD together with a final estimate
    below max(VANISHING_THRESHOLD, SE_MULTIPLIER SE).
    """
    multiplier = conf.get_setting('SE_MULTIPLIER')
    threshold = conf.get_setting('VANISHING_THRESHOLD')
    estimates = np.abs(np.asarray(estimates, dtype=float))
    standard_errors = np.asarray(standard_errors, dtype=float)
    fit = loglog_fit(sizes, estimates)

    if not np.any(estimates):
        return Verdicts.PASS, fit
    if np.all(standard_errors >= estimates) and standard_errors[-1] > threshold:
        return Verdicts.INCONCLUSIVE, fit
    if np.all(estimates <= multiplier * standard_errors):
        return Verdicts.PASS, fit

    small = estimates[-1] < max(threshold, multiplier * standard_errors[-1])
    if fit is None:
        return (Verdicts.PASS if small else Verdicts.FAIL), fit
    return (Verdicts.PASS if small and fit.slope < conf.get_setting('DECAY_SLOPE_THRESHOLD')
            else Verdicts.FAIL), fit


def is_stable(values):
    """ Relative spread over the top half of the grid below STABILITY_TOLERANCE, around a nonzero level """
    top = np.asarray(values, dtype=float)[len(values) // 2:]
    level = float(np.mean(top))
    if level == 0:
        return False
    return float(np.max(top) - np.min(top)) / abs(level) < conf.get_setting('STABILITY_TOLERANCE')


def _entry(condition, sizes, estimates, standard_errors, details=None, verdict=None, inclusion=None):
    fitted_verdict, fit = vanishing_verdict(sizes, estimates, standard_errors)
    entry = ConditionEntry(
        condition, sizes, estimates, standard_errors, verdict or fitted_verdict,
        slope=fit.slope if fit else None, r_squared=fit.r_squared if fit else None, details=details,
        inclusion=inclusion)
    if entry.verdict == Verdicts.INCONCLUSIVE:
        logger.warning('%s is inconclusive, standard errors dominate the estimates', condition)
    else:
        logger.info('%s: %s', condition, entry.verdict)
    return entry


def _size_replicates(design, model, N, reps, seed):
    """
    Sample sizes, mean responses and probabilities of an empty sample over ``reps`` populations.
    The empty-sample probability is exact given the population when the design provides it,
    otherwise the indicator of an empty draw.
    """
    sizes = np.empty(int(reps))
    means = np.empty(int(reps))
    empty = np.empty(int(reps))
    for rep in range(int(reps)):
        population = draw_population(model, N, mix64(seed, rep, 1))
        if rep == 0:
            design.check(population)
        indicator = design.draw(population, make_rng(seed, rep, 2))
        sizes[rep] = indicator.n
        means[rep] = np.mean(population.responses)
        exact = design.empty_probability(population)
        empty[rep] = float(indicator.is_empty) if exact is None else exact
    return sizes, means, empty


def empty_sample_bound(expected_n, var_n):
    """ Chebyshev bound P(n = 0) <= Var(n) / (E[n] - 1)^2 """
    if not expected_n > 1:
        raise ValueError('Empty sample bound needs E[n] > 1, got %s' % expected_n)
    return var_n / (expected_n - 1.0) ** 2


def srswor_cov_identity(N, n):
    """
    Cov(I_1, I_2) under simple random sampling of n out of N units, from the closed form
    n (n - N) / (N^2 (N - 1)) and from enumeration of all samples
    """
    if int(N) != N or int(n) != n or not 2 <= N <= MAX_IDENTITY_N or not 1 <= n <= N:
        raise ValueError('Need 2 <= N <= %s and 1 <= n <= N, got N=%s, n=%s' % (MAX_IDENTITY_N, N, n))
    N, n = int(N), int(n)
    closed_form = Fraction(n * (n - N), N * N * (N - 1))

    total = special.comb(N, n, exact=True)
    first = second = both = 0
    for chosen in itertools.combinations(range(N), n):
        has_first, has_second = 0 in chosen, 1 in chosen
        first += has_first
        second += has_second
        both += has_first and has_second
    enumerated = Fraction(both, total) - Fraction(first, total) * Fraction(second, total)
    return float(closed_form), float(enumerated)


def check_A4(design, model, n_grid, reps, seed):
    """
    Independent sampling without replacement: E[n]/N must settle on a nonzero value
    and Var(n)/N^2 must vanish
    """
    sizes = _check_grid(n_grid, minimum=3)
    if design.with_replacement:
        raise ValidationError('A4 applies to sampling without replacement')

    multiplier = conf.get_setting('SE_MULTIPLIER')
    fractions, fraction_errors, variances, variance_errors, covariances = [], [], [], [], []
    dependent = []
    for index, N in enumerate(sizes):
        counts, means, _ = _size_replicates(design, model, N, reps, mix64(seed, index))
        ratio = counts / float(N)
        fraction, fraction_se = mean_and_se(ratio)
        variance, variance_se = variance_and_se(ratio)
        covariance, covariance_se = mean_and_se((ratio - ratio.mean()) * (means - means.mean()))
        if abs(covariance) > multiplier * covariance_se and covariance_se > 0:
            dependent.append(N)
        fractions.append(fraction)
        fraction_errors.append(fraction_se)
        variances.append(variance)
        variance_errors.append(variance_se)
        covariances.append(covariance)

    if dependent:
        logger.warning('Sample size of %s depends on the responses at N=%s, A4 does not apply',
                       design, ', '.join(str(N) for N in dependent))

    stable = is_stable(fractions)
    details = {
        'mean_fraction': fractions, 'mean_fraction_se': fraction_errors, 'stable': stable,
        'covariance_n_mean_y': covariances, 'dependent_sizes': dependent,
    }
    variance_verdict, _ = vanishing_verdict(sizes, variances, variance_errors)
    verdict = variance_verdict if stable else Verdicts.FAIL
    return _entry('A4', sizes, variances, variance_errors, details=details, verdict=verdict)


def check_A0(design, model, y_values, n_grid, reps, seed):
    """ Bounded m_gamma (A0.1) and its pointwise convergence to a limit with positive integral (A0.2) """
    sizes = _check_grid(n_grid)
    multiplier = conf.get_setting('SE_MULTIPLIER')
    try:
        weight = design.limit_weight(model)
        normalizer = weight.normalizer
    except NoLimitError as error:
        weight, normalizer = None, None
        logger.warning('%s', error)

    peaks, peak_errors, gaps, gap_errors = [], [], [], []
    for index, N in enumerate(sizes):
        estimates = [m_monte_carlo(design, model, y, N, reps, mix64(seed, index, position))
                     for position, y in enumerate(y_values)]
        peak = max(estimates, key=lambda estimate: estimate.m_hat)
        peaks.append(peak.m_hat)
        peak_errors.append(peak.se_m)
        if weight is not None:
            distances = [(abs(estimate.m_hat - weight(y)), estimate.se_m)
                         for y, estimate in zip(y_values, estimates)]
            gap, gap_se = max(distances)
            gaps.append(gap)
            gap_errors.append(gap_se)

    top = peaks[len(peaks) // 2:]
    bounded = max(peaks) <= (1 + conf.get_setting('STABILITY_TOLERANCE')) * max(top) + multiplier * max(peak_errors)
    entries = [ConditionEntry(
        'A0.1', sizes, peaks, peak_errors, Verdicts.PASS if bounded else Verdicts.FAIL,
        details={'bounded': bounded})]

    if weight is None:
        entries.append(ConditionEntry(
            'A0.2', sizes, [0.0] * len(sizes), [0.0] * len(sizes), Verdicts.FAIL,
            details={'reason': 'no limit weight'}))
    elif not normalizer > 0:
        entries.append(ConditionEntry(
            'A0.2', sizes, gaps, gap_errors, Verdicts.FAIL, details={'normalizer': normalizer}))
    else:
        entries.append(_entry('A0.2', sizes, gaps, gap_errors,
                              details={'normalizer': normalizer, 'weight': weight.describe()}))
    return entries


def check_A3(design, model, y_pairs, n_grid, reps, seed):
    """ Pointwise conditions for sampling without replacement, worst case over the given pairs """
    sizes = _check_grid(n_grid)
    if design.with_replacement:
        raise ValidationError('A3 applies to sampling without replacement')

    multiplier = conf.get_setting('SE_MULTIPLIER')
    y_pairs = [(float(y1), float(y2)) for y1, y2 in y_pairs]
    y_values = sorted(set(itertools.chain.from_iterable(y_pairs)))
    limits = dict((y, design.limit_inclusion(y, model)) for y in y_values)

    marginals = []
    covariances, covariance_errors, gaps, gap_errors = [], [], [], []
    empty, empty_errors, bounds = [], [], []
    for index, N in enumerate(sizes):
        marginal = dict((y, m_monte_carlo(design, model, y, N, reps, mix64(seed, 1, index, position)))
                        for position, y in enumerate(y_values))
        marginals.append(marginal)

        worst_covariance, worst_gap = (0.0, 0.0), (0.0, 0.0)
        pairs = []
        for position, (y1, y2) in enumerate(y_pairs):
            pair = pairwise_monte_carlo(design, model, y1, y2, N, reps, mix64(seed, 2, index, position))
            pairs.append(pair)
            worst_covariance = max(worst_covariance, (abs(pair.c_hat), pair.se_c))
            for mprime, mprime_se, y in ((pair.mprime_12, pair.se_mprime_12, y1),
                                         (pair.mprime_21, pair.se_mprime_21, y2)):
                gap = abs(mprime - marginal[y].m_hat)
                worst_gap = max(worst_gap, (gap, math.hypot(mprime_se, marginal[y].se_m)))
        covariances.append(worst_covariance[0])
        covariance_errors.append(worst_covariance[1])
        gaps.append(worst_gap[0])
        gap_errors.append(worst_gap[1])

        counts, _, probabilities = _size_replicates(design, model, N, reps, mix64(seed, 3, index))
        probability, probability_se = mean_and_se(probabilities)
        empty.append(probability)
        empty_errors.append(probability_se)
        expected, variance = float(np.mean(counts)), float(np.var(counts))
        bounds.append(empty_sample_bound(expected, variance) if expected > 1 else None)

    entries = []
    if all(limit is not None for limit in limits.values()):
        distances = [max((abs(marginal[y].m_hat - limits[y]), marginal[y].se_m) for y in y_values)
                     for marginal in marginals]
        entries.append(_entry('A3.2', sizes, [d[0] for d in distances], [d[1] for d in distances],
                              details={'limit': dict(('%r' % y, limits[y]) for y in y_values)}))
    else:
        # no closed-form limit: successive estimates must settle on a nonzero value
        steps = [max((abs(current[y].m_hat - following[y].m_hat),
                      math.hypot(current[y].se_m, following[y].se_m)) for y in y_values)
                 for current, following in zip(marginals, marginals[1:])]
        final = max((marginals[-1][y].m_hat, marginals[-1][y].se_m) for y in y_values)
        nonzero = final[0] > multiplier * final[1]
        step_sizes = sizes[1:] if steps else sizes
        estimates = [step[0] for step in steps] or [0.0]
        errors = [step[1] for step in steps] or [0.0]
        verdict, _ = vanishing_verdict(step_sizes, estimates, errors)
        entries.append(_entry(
            'A3.2', step_sizes, estimates, errors, details={'final_m_hat': final[0], 'nonzero': nonzero},
            verdict=verdict if nonzero else Verdicts.FAIL))

    entries.append(_entry('A3.3', sizes, covariances, covariance_errors, inclusion=pairs))
    entries.append(_entry('A3.4', sizes, gaps, gap_errors))
    entries.append(_entry('A3.5', sizes, empty, empty_errors, details={'empty_sample_bound': bounds}))
    return entries


def _midpoint_grid(model, points):
    """ Responses at the midpoints of ``points`` equal-probability cells of the model """
    if int(points) != points or points < 1:
        raise ValueError('Pair grid needs a positive number of points, got %s' % points)
    return model.quantile((np.arange(int(points)) + 0.5) / points)


def check_A1_integrals(design, model, n_grid, pair_draws, reps, seed):
    """
    Integral conditions over f x f. The integrals are evaluated on a product grid of
    ``pair_draws`` equal-probability cells per axis, with Monte Carlo inner values.
    Pair functionals are symmetric under exchangeability, so only pairs i <= j are estimated.
    """
    sizes = _check_grid(n_grid)
    grid = _midpoint_grid(model, pair_draws)
    points = len(grid)
    cells = points * points

    covariance, covariance_errors, products, product_errors = [], [], [], []
    second_moments, second_moment_errors, empty, empty_errors = [], [], [], []
    for index, N in enumerate(sizes):
        marginal = [m_monte_carlo(design, model, y, N, reps, mix64(seed, 1, index, position))
                    for position, y in enumerate(grid)]

        c_total = c_variance = p_total = p_variance = 0.0
        for i, j in itertools.combinations_with_replacement(range(points), 2):
            multiplicity = 1.0 if i == j else 2.0
            pair = pairwise_monte_carlo(design, model, grid[i], grid[j], N, reps, mix64(seed, 2, index, i, j))
            c_total += multiplicity * pair.c_hat
            c_variance += multiplicity ** 2 * pair.se_c ** 2

            m_i, m_j = marginal[i], marginal[j]
            p_total += multiplicity * (pair.mprime_12 * pair.mprime_21 - m_i.m_hat * m_j.m_hat)
            p_variance += multiplicity ** 2 * (
                (pair.mprime_21 * pair.se_mprime_12) ** 2 + (pair.mprime_12 * pair.se_mprime_21) ** 2
                + (m_j.m_hat * m_i.se_m) ** 2 + (m_i.m_hat * m_j.se_m) ** 2)
        covariance.append(c_total / cells)
        covariance_errors.append(math.sqrt(c_variance) / cells)
        products.append(p_total / cells)
        product_errors.append(math.sqrt(p_variance) / cells)

        # v + m^2 is the second moment of the indicator
        moments = [estimate.v_hat + estimate.m_hat ** 2 for estimate in marginal]
        moment_errors = [math.hypot(estimate.se_v, 2 * estimate.m_hat * estimate.se_m) for estimate in marginal]
        second_moments.append(float(np.mean(moments)) / N)
        second_moment_errors.append(math.sqrt(np.sum(np.square(moment_errors))) / points / N)

        _, _, probabilities = _size_replicates(design, model, N, reps, mix64(seed, 3, index))
        probability, probability_se = mean_and_se(probabilities)
        empty.append(probability)
        empty_errors.append(probability_se)

    details = {'pair_grid': points}
    return [
        _entry('A1.1', sizes, covariance, covariance_errors, details=details),
        _entry('A1.2', sizes, products, product_errors, details=details),
        _entry('A1.3', sizes, second_moments, second_moment_errors, details=details),
        _entry('A1.5', sizes, empty, empty_errors),
    ]


def check_A2(design, model, alpha_grid, n_grid, reps, seed):
    """
    Conditional conditions on one nested population sequence: the N-point population
    is the prefix of the largest one, so it satisfies the Glivenko-Cantelli hypothesis almost surely.
    Each size redraws the indicators ``reps`` times with the population fixed; worst case over alpha.
    """
    sizes = _check_grid(n_grid)
    alphas = np.asarray(alpha_grid, dtype=float)
    if not alphas.size:
        raise ValueError('A2 needs at least one alpha')

    nested = draw_population(model, sizes[-1], mix64(seed, 0))
    variances, variance_errors, gaps, gap_errors = [], [], [], []
    empty, empty_errors = [], []
    centering_available = True
    for index, N in enumerate(sizes):
        population = nested.prefix(N)
        design.check(population)
        counts = np.array([design.draw(population, make_rng(seed, 1, index, rep)).counts
                           for rep in range(int(reps))], dtype=float)
        below = (population.responses[None, :] <= alphas[:, None]).astype(float)
        totals = counts.dot(below.T) / N

        worst = max(variance_and_se(totals[:, position]) for position in range(alphas.size))
        variances.append(worst[0])
        variance_errors.append(worst[1])

        inclusion = m_theoretical(design, model, population.responses, N)
        if inclusion is None:
            centering_available = False
            gaps.append(0.0)
            gap_errors.append(0.0)
        else:
            centered = below.dot(np.asarray(inclusion.value, dtype=float)) / N
            worst = max((abs(mean_and_se(totals[:, position])[0] - centered[position]),
                         mean_and_se(totals[:, position])[1]) for position in range(alphas.size))
            gaps.append(worst[0])
            gap_errors.append(worst[1])

        exact = design.empty_probability(population)
        if exact is None:
            probability, probability_se = mean_and_se(~counts.any(axis=1))
        else:
            probability, probability_se = exact, 0.0
        empty.append(probability)
        empty_errors.append(probability_se)

    entries = [_entry('A2.1', sizes, variances, variance_errors)]
    if centering_available:
        entries.append(_entry('A2.2', sizes, gaps, gap_errors))
    else:
        entries.append(ConditionEntry('A2.2', sizes, gaps, gap_errors, Verdicts.INCONCLUSIVE,
                                      details={'reason': 'no inclusion probability available'}))
    entries.append(_entry('A2.3', sizes, empty, empty_errors))
    return entries
