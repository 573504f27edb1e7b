import collections
import math

import numpy as np


TrendFit = collections.namedtuple('TrendFit', ('slope', 'intercept', 'r_squared'))


def mean_and_se(values):
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError('Cannot summarize an empty series')
    mean = float(np.mean(values))
    if values.size < 2:
        return mean, 0.0
    return mean, float(np.std(values, ddof=1) / math.sqrt(values.size))


def variance_and_se(values):
    """
    Plug-in variance of the series and the standard error of that estimate
    """
    values = np.asarray(values, dtype=float)
    # shifted by the first value, so a constant series has exactly zero variance
    shifted = values - values[:1]
    squared = (shifted - np.mean(shifted)) ** 2
    return mean_and_se(squared)


def loglog_fit(sizes, values):
    """
    Least squares fit of log(value) = intercept + slope * log(size)
    Non-positive values are left out; returns None when fewer than two points remain.
    """
    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = values > 0
    if np.count_nonzero(keep) < 2:
        return None

    x, y = np.log(sizes[keep]), np.log(values[keep])
    slope, intercept = np.polyfit(x, y, deg=1)
    total = float(np.sum((y - np.mean(y)) ** 2))
    residual = float(np.sum((y - (intercept + slope * x)) ** 2))
    # a flat series is fitted exactly by a zero slope
    r_squared = 1.0 - residual / total if total > 0 else 1.0
    return TrendFit(float(slope), float(intercept), r_squared)
