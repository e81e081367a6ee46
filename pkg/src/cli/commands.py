"""Subcommand implementations: exponent, simulate, leakage and sweep"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List

import numpy as np

import config
from ..codec.binning import bin_count, check_source_guard, sample_code
from ..errors import GuardExceededError, InsufficientDataError
from ..exponents import (
    check_convergence,
    fa_exponent_gallager,
    fa_exponent_types,
    fr_expurgated_exponent,
    fr_map_exponent,
    fr_random_exponent,
    secrecy_exponent,
    typical_leakage_bound,
)
from ..montecarlo import estimate_fa, estimate_fr, exact_leakage, fit_exponent
from ..montecarlo.simulation import code_seeds
from .report import CommandOutput, to_units
from .settings import RunConfig

LOGGER = logging.getLogger(__name__)

EXPONENT_COLUMNS = [
    'schema_version', 'kind', 'r_w', 'r_s', 'value', 'units', 'argmin', 'resolution',
    'refined', 'converged', 'metric', 'master_seed', 'config_hash',
]

SIMULATION_COLUMNS = [
    'schema_version', 'n', 'r_w', 'r_s', 'metric', 'num_codes', 'num_trials',
    'fr_errors', 'fr_estimate', 'fr_ci_low', 'fr_ci_high',
    'fa_successes', 'fa_estimate', 'fa_ci_low', 'fa_ci_high', 'leakage',
    'fr_exponent', 'fa_exponent', 'fr_slope', 'fr_slope_stderr', 'fa_slope', 'fa_slope_stderr',
    'units', 'master_seed', 'config_hash',
]

LEAKAGE_COLUMNS = [
    'schema_version', 'n', 'code_index', 'code_seed', 'r_w', 'r_s', 'm_s', 'm_w',
    'leakage', 'log_m_s', 'log_m_w', 'typical_bound', 'secrecy_exponent',
    'units', 'master_seed', 'config_hash',
]

# Exponent kinds that depend on r_w alone
_W_ONLY_KINDS = ('fr_random', 'fr_map', 'fr_expurgated')


def _ordered_map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _exponent_task(run_config: RunConfig, model, metric, kind, r_w, r_s):
    resolution = run_config.grid_resolution
    if kind == 'fr_random':
        fn, args = fr_random_exponent, (model.p_xy, r_w, metric)
    elif kind == 'fr_map':
        fn, args = fr_map_exponent, (model.p_xy, r_w)
    elif kind == 'fr_expurgated':
        fn, args = fr_expurgated_exponent, (model.p_x, model.p_y_given_x, r_w, metric)
        resolution = min(resolution, config.EXPURGATION_RESOLUTION)
    elif kind == 'fa_types':
        fn, args = fa_exponent_types, (model.p_x, r_w, r_s)
    elif kind == 'fa_gallager':
        fn, args = fa_exponent_gallager, (model.p_x, r_w, r_s)
        resolution = max(resolution, config.GALLAGER_RESOLUTION)
    else:
        fn, args = secrecy_exponent, (model.p_x, r_s + r_w)
    if run_config.check_convergence:
        return check_convergence(fn, *args, resolution=resolution)
    return fn(*args, resolution=resolution)


def cmd_exponent(run_config: RunConfig) -> CommandOutput:
    """One row per (exponent kind, r_w, r_s)"""
    model = run_config.source.build()
    metric = run_config.metric.build(model)
    units = run_config.units
    tasks, keys = [], {}
    for pair in run_config.rate_pairs():
        for kind in run_config.exponent_kinds:
            key = (kind, pair.r_w) if kind in _W_ONLY_KINDS else (kind, pair.r_w, pair.r_s)
            if key not in keys:
                keys[key] = len(tasks)
                tasks.append((kind, pair.r_w, pair.r_s))
    LOGGER.info("computing %d exponent(s)", len(tasks))
    results = _ordered_map(
        lambda task: _exponent_task(run_config, model, metric, *task), tasks, run_config.threads)

    output = CommandOutput('exponent', EXPONENT_COLUMNS)
    digest = run_config.config_hash()
    for pair in run_config.rate_pairs():
        for kind in run_config.exponent_kinds:
            key = (kind, pair.r_w) if kind in _W_ONLY_KINDS else (kind, pair.r_w, pair.r_s)
            result = results[keys[key]]
            output.rows.append({
                'schema_version': config.CSV_SCHEMA_VERSION,
                'kind': kind,
                'r_w': to_units(pair.r_w, units),
                'r_s': to_units(pair.r_s, units),
                'value': to_units(result.value, units),
                'units': units,
                'argmin': result.summary(),
                'resolution': result.grid_resolution,
                'refined': result.refined,
                'converged': result.converged,
                'metric': metric.describe() if kind in ('fr_random', 'fr_expurgated') else '',
                'master_seed': run_config.master_seed,
                'config_hash': digest,
            })
            output.details.append({'kind': kind, 'r_w': pair.r_w, 'r_s': pair.r_s,
                                   'value_nats': result.value, 'argmin': result.argmin})
    return output


def check_simulation_guards(run_config: RunConfig, x_size) -> None:
    """Refuse the whole run before any work if one (n, rates) breaks a guard"""
    for n in run_config.n_values:
        check_source_guard(n, x_size)
        for pair in run_config.rate_pairs():
            cells = bin_count(n, pair.r_s) * bin_count(n, pair.r_w)
            if cells > config.POSTERIOR_TABLE_GUARD:
                LOGGER.warning("n=%d: posterior tables of %d cells exceed the guard", n, cells)
                raise GuardExceededError('posterior table cells', cells, config.POSTERIOR_TABLE_GUARD)


def _slope(points):
    try:
        fit = fit_exponent(points)
    except InsufficientDataError:
        return None, None
    return fit.slope, fit.stderr


def cmd_simulate(run_config: RunConfig) -> CommandOutput:
    """One SimulationReport row per (n, rates) with theoretical and fitted exponents alongside"""
    model = run_config.source.build()
    metric = run_config.metric.build(model)
    check_simulation_guards(run_config, model.x_size)
    units = run_config.units
    digest = run_config.config_hash()
    output = CommandOutput('simulate', SIMULATION_COLUMNS)
    for pair in run_config.rate_pairs():
        fr_theory = fr_random_exponent(model.p_xy, pair.r_w, metric, run_config.grid_resolution).value
        fa_theory = fa_exponent_types(model.p_x, pair.r_w, pair.r_s, run_config.grid_resolution).value
        reports = []
        for n in run_config.n_values:
            fr = estimate_fr(model, pair, metric, n, run_config.codes, run_config.trials,
                             run_config.master_seed, run_config.threads)
            fa = estimate_fa(model, pair, n, run_config.codes, run_config.trials,
                             run_config.master_seed, run_config.threads)
            reports.append((n, fr, fa))
        fr_slope, fr_err = _slope([(n, fr.fr_estimate) for n, fr, _ in reports])
        fa_slope, fa_err = _slope([(n, fa.fa_estimate) for n, _, fa in reports])
        for n, fr, fa in reports:
            output.rows.append({
                'schema_version': config.CSV_SCHEMA_VERSION,
                'n': n,
                'r_w': to_units(pair.r_w, units),
                'r_s': to_units(pair.r_s, units),
                'metric': fr.metric,
                'num_codes': fr.num_codes,
                'num_trials': fr.num_trials,
                'fr_errors': fr.fr_errors,
                'fr_estimate': fr.fr_estimate,
                'fr_ci_low': fr.fr_ci[0],
                'fr_ci_high': fr.fr_ci[1],
                'fa_successes': fa.fa_successes,
                'fa_estimate': fa.fa_estimate,
                'fa_ci_low': fa.fa_ci[0],
                'fa_ci_high': fa.fa_ci[1],
                'leakage': to_units(fr.leakage_nats, units),
                'fr_exponent': to_units(fr_theory, units),
                'fa_exponent': to_units(fa_theory, units),
                'fr_slope': to_units(fr_slope, units),
                'fr_slope_stderr': to_units(fr_err, units),
                'fa_slope': to_units(fa_slope, units),
                'fa_slope_stderr': to_units(fa_err, units),
                'units': units,
                'master_seed': run_config.master_seed,
                'config_hash': digest,
            })
            output.details.append({'n': n, 'r_w': pair.r_w, 'r_s': pair.r_s,
                                   'code_seeds': list(fr.code_seeds),
                                   'wall_time_s': fr.wall_time + fa.wall_time})
    return output


def cmd_leakage(run_config: RunConfig) -> CommandOutput:
    """Exact I(S; W) per (n, code) with the typical-code bound and E_sec(r_s + r_w)"""
    model = run_config.source.build()
    for n in run_config.n_values:
        check_source_guard(n, model.x_size)
    units = run_config.units
    digest = run_config.config_hash()
    output = CommandOutput('leakage', LEAKAGE_COLUMNS)
    for pair in run_config.rate_pairs():
        reference = secrecy_exponent(model.p_x, pair.r_s + pair.r_w, run_config.grid_resolution).value
        for n in run_config.n_values:
            seeds = code_seeds(run_config.master_seed, run_config.codes)
            bound = typical_leakage_bound(model.p_x, n, pair.r_s, pair.r_w)

            def leak(seed, n=n, pair=pair):
                code = sample_code(n, model.x_size, pair, seed)
                return code, exact_leakage(code, model.p_x)

            for index, (code, leakage) in enumerate(_ordered_map(leak, seeds, run_config.threads)):
                output.rows.append({
                    'schema_version': config.CSV_SCHEMA_VERSION,
                    'n': n,
                    'code_index': index,
                    'code_seed': seeds[index],
                    'r_w': to_units(pair.r_w, units),
                    'r_s': to_units(pair.r_s, units),
                    'm_s': code.m_s,
                    'm_w': code.m_w,
                    'leakage': to_units(leakage, units),
                    'log_m_s': to_units(float(np.log(code.m_s)), units),
                    'log_m_w': to_units(float(np.log(code.m_w)), units),
                    'typical_bound': to_units(bound, units),
                    'secrecy_exponent': to_units(reference, units),
                    'units': units,
                    'master_seed': run_config.master_seed,
                    'config_hash': digest,
                })
    return output


def cmd_sweep(run_config: RunConfig) -> Dict[str, CommandOutput]:
    """Exponents, simulations and leakage over one configuration, for side-by-side plots"""
    # Includes the source guard that leakage applies
    check_simulation_guards(run_config, run_config.source.build().x_size)
    return {
        'exponent': cmd_exponent(run_config),
        'simulate': cmd_simulate(run_config),
        'leakage': cmd_leakage(run_config),
    }


COMMANDS = {
    'exponent': cmd_exponent,
    'simulate': cmd_simulate,
    'leakage': cmd_leakage,
}


def summary_columns(command) -> List[str]:
    return {
        'exponent': ['kind', 'r_w', 'r_s', 'value', 'converged'],
        'simulate': ['n', 'r_w', 'r_s', 'fr_estimate', 'fa_estimate', 'leakage', 'fr_exponent'],
        'leakage': ['n', 'code_index', 'r_w', 'r_s', 'leakage', 'secrecy_exponent'],
    }[command]
