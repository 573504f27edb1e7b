from __future__ import unicode_literals

import io
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from rest_framework.renderers import JSONRenderer

from informative_selection import conf
from informative_selection.conditions import utils as conditions
from informative_selection.conditions.models import ConditionReport
from informative_selection.coupling.utils import build_coupling, coupled_sup_trajectory, coupling_target
from informative_selection.designs.utils import enumerate_support, support_to_csv
from informative_selection.ecdf.utils import empirical_cdf, quantile_sup_distance, sup_distance
from informative_selection.exceptions import NoLimitError
from informative_selection.seeding import make_rng, mix64
from informative_selection.superpop.utils import draw_population
from informative_selection.weights.models import LimitCdf
from .models import ConvergenceReport, ConvergenceRow, ExperimentConfig


logger = logging.getLogger(__name__)


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}) + b'\n'


def summary_path(output):
    return os.path.splitext(output)[0] + '.json'


def write_text(path, text):
    with io.open(path, 'w', encoding='utf-8', newline='') as stream:
        stream.write(text)
    logger.info('Report has been written to %s', path)


def write_bytes(path, content):
    with io.open(path, 'wb') as stream:
        stream.write(content)
    logger.info('Report has been written to %s', path)


def convergence_target(config):
    if config.target == ExperimentConfig.Targets.SUPERPOP:
        return config.model
    try:
        return LimitCdf(config.design.limit_weight(config.model))
    except NoLimitError as error:
        raise NoLimitError('%s. Run the audit command, or set "target": "superpop" to compare '
                           'against the superpopulation c.d.f.' % error)


def _replicate(config, target, index, N, replicate):
    """
    One (N, replicate) cell. Its seed is mix64(seed, N index, replicate); the population uses
    mix64(cell seed, 1) and the selection mix64(cell seed, 2).
    """
    cell_seed = mix64(config.seed, index, replicate)
    population = draw_population(config.model, N, mix64(cell_seed, 1))
    config.design.check(population)
    indicator = config.design.draw(population, make_rng(cell_seed, 2))
    step = empirical_cdf(population, indicator)
    distance = sup_distance(step, target)

    quantile_distance = None
    if indicator.is_empty:
        logger.warning('Empty sample at N=%s, replicate %s', N, replicate)
    else:
        quantile_distance = quantile_sup_distance(step, target, config.quantile_interval, config.quantile_grid)
    logger.debug('N=%s replicate %s: n=%s sup=%s', N, replicate, indicator.n, distance)
    return ConvergenceRow(config.design.variant, N, replicate, indicator.n, indicator.is_empty,
                          distance, distance ** 2, quantile_distance, indicator.clamped)


def run_convergence(config):
    """ Sup distances of the empirical c.d.f. and quantiles to the target along the N-grid """
    if config.quantile_grid is None:
        config.quantile_grid = conf.get_setting('QUANTILE_GRID')
    target = convergence_target(config)
    lower, upper = (float(value) for value in config.quantile_interval)
    # fills the quantile cache of the limit before workers share it
    target.quantile(np.array([lower]) if lower == upper else np.linspace(lower, upper, int(config.quantile_grid)))

    cells = [(index, N, replicate) for index, N in enumerate(config.n_grid)
             for replicate in range(config.replicates)]
    with ThreadPoolExecutor(max_workers=conf.get_setting('WORKERS')) as executor:
        rows = list(executor.map(lambda cell: _replicate(config, target, *cell), cells))

    report = ConvergenceReport(config, rows)
    for aggregate in report.aggregates:
        logger.info('N=%s: mean sup %s, mean sup^2 %s, empty fraction %s',
                    aggregate.N, aggregate.mean_sup, aggregate.mean_sup_sq, aggregate.empty_fraction)
        if aggregate.clamped:
            logger.warning('N=%s: %s inclusion probabilities clamped to one', aggregate.N, aggregate.clamped)
    return report


def default_condition_groups(design):
    if design.with_replacement:
        return ['A0', 'A1', 'A2']
    if design.independent:
        return ['A4']
    return ['A3', 'A1']


def run_audit(config):
    """ Condition checks applicable to the design, or those listed in the config """
    design, model = config.design, config.model
    groups = config.conditions or default_condition_groups(design)
    y_pairs = config.y_pairs
    if not y_pairs:
        lower, upper = model.quantile(np.array([0.25, 0.75]))
        y_pairs = [(lower, lower), (lower, upper), (upper, upper)]
    y_values = sorted(set(float(y) for pair in y_pairs for y in pair))
    alpha_grid = config.alpha_grid or list(model.quantile(np.array([0.25, 0.5, 0.75])))

    report = ConditionReport(design, model)
    for position, group in enumerate(groups):
        seed = mix64(config.seed, position)
        logger.info('Checking %s for %s', group, design)
        if group == 'A0':
            report.extend(conditions.check_A0(design, model, y_values, config.n_grid, config.replicates, seed))
        elif group == 'A1':
            report.extend(conditions.check_A1_integrals(
                design, model, config.n_grid, config.pair_draws, config.replicates, seed))
        elif group == 'A2':
            report.extend(conditions.check_A2(design, model, alpha_grid, config.n_grid, config.replicates, seed))
        elif group == 'A3':
            report.extend(conditions.check_A3(design, model, y_pairs, config.n_grid, config.replicates, seed))
        else:
            report.add(conditions.check_A4(design, model, config.n_grid, config.replicates, seed))
    logger.info('Audit of %s finished: %s', design, report.verdict)
    return report


def run_couple(config):
    """ Coupling partition of one population, and the h trajectory at x along the N-grid """
    population = draw_population(config.model, config.population_size, config.seed)
    target = coupling_target(config.design, config.model, config.target)
    partition = build_coupling(config.design, population, target, normalized=config.normalized)
    trajectory = coupled_sup_trajectory(config.design, config.model, config.n_grid, config.x, config.seed,
                                        target=config.target, normalized=config.normalized)
    return partition, trajectory


def run_enumerate(config):
    population = draw_population(config.model, config.population_size, config.seed)
    return enumerate_support(config.design, population)


def support_csv(support):
    stream = io.StringIO()
    support_to_csv(support, stream)
    return stream.getvalue()
