"""Seeded Monte Carlo estimation of FR and FA probabilities.

Code c of a run uses the key derive_seed(master_seed, c). Its trials read a
counter-based stream keyed on derive_seed(master_seed, c, purpose); trial t
consumes a fixed block of words starting at t * words_per_trial, so results do
not depend on chunking or on how codes are spread over threads.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy.stats import binomtest

import config
from ..codec.binning import BinningCode, RatePair, sample_code
from ..codec.streams import derive_seed, uniforms
from ..decoders.likelihood import imposter_guesses, posterior_table, sample_index
from ..decoders.metric import DecodingMetric
from .exact import exact_leakage
from .source import SourceModel, lexicographic_index

LOGGER = logging.getLogger(__name__)

FR_STREAM = 1
FA_STREAM = 2


@dataclass
class SimulationReport:
    """Empirical FR / FA / leakage for one (n, rates, metric); FA is the attack success probability"""

    n: int
    r_s: float
    r_w: float
    metric: str
    num_codes: int
    num_trials: int
    master_seed: int
    code_seeds: Tuple[int, ...]
    leakage_nats: float
    fr_errors: Optional[int] = None
    fr_estimate: Optional[float] = None
    fr_ci: Optional[Tuple[float, float]] = None
    fa_successes: Optional[int] = None
    fa_estimate: Optional[float] = None
    fa_ci: Optional[Tuple[float, float]] = None
    wall_time: float = field(default=0.0, compare=False)


def wilson_interval(successes, trials, level=config.CONFIDENCE_LEVEL) -> Tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    ci = binomtest(int(successes), int(trials)).proportion_ci(confidence_level=level, method='wilson')
    return float(ci.low), float(ci.high)


def code_seeds(master_seed, num_codes) -> Tuple[int, ...]:
    return tuple(derive_seed(master_seed, c) for c in range(num_codes))


def _trial_blocks(key, trials, width):
    for start in range(0, trials, config.TRIAL_CHUNK):
        count = min(config.TRIAL_CHUNK, trials - start)
        yield uniforms(key, start * width, count * width).reshape(count, width)


def posterior_cache(code: BinningCode, m: DecodingMetric):
    """Posterior tables keyed by the observation tuple, least recently used evicted first.

    At most ``config.POSTERIOR_CACHE_CELLS`` probabilities are held, and never
    fewer than one table.
    """
    @lru_cache(maxsize=max(1, config.POSTERIOR_CACHE_CELLS // (code.m_w * code.m_s)))
    def table(y_key):
        return posterior_table(code, m, np.array(y_key, dtype=np.int64)).probs

    return table


def count_fr_errors(code: BinningCode, model: SourceModel, m: DecodingMetric, trials, trial_key) -> int:
    """FR errors over ``trials`` legitimate attempts: draw (x, y), enroll x, decode from (y, f(x))"""
    n = code.n
    f = code.f_table.astype(np.int64)
    g = code.g_table.astype(np.int64)
    lookup = posterior_cache(code, m)
    errors = 0
    for block in _trial_blocks(trial_key, trials, n + 1):
        x, y = model.sample_pairs(block[:, :n])
        x_index = lexicographic_index(x, model.x_size)
        y_index = lexicographic_index(y, model.y_size)
        w, s = f[x_index], g[x_index]
        for y_value in np.unique(y_index):
            rows = np.flatnonzero(y_index == y_value)
            y_key = tuple(int(v) for v in y[rows[0]])
            decoded = sample_index(lookup(y_key)[w[rows]], block[rows, n])
            errors += int(np.count_nonzero(decoded != s[rows]))
    LOGGER.debug("posterior cache for n=%d: %s", n, lookup.cache_info())
    return errors


def count_fa_successes(code: BinningCode, model: SourceModel, trials, trial_key) -> int:
    """Imposter successes: draw x, enroll, guess the key from f(x) alone"""
    guesses = imposter_guesses(code, model.p_x)
    f = code.f_table.astype(np.int64)
    g = code.g_table.astype(np.int64)
    successes = 0
    for block in _trial_blocks(trial_key, trials, code.n):
        x_index = lexicographic_index(model.sample_sources(block), model.x_size)
        successes += int(np.count_nonzero(guesses[f[x_index]] == g[x_index]))
    return successes


def _run_codes(work, num_codes, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, range(num_codes)))
    return [work(c) for c in range(num_codes)]


def estimate_fr(model: SourceModel, rates: RatePair, m: DecodingMetric, n, num_codes,
                trials_per_code, master_seed, threads=config.DEFAULT_THREADS) -> SimulationReport:
    """Ensemble-averaged FR of the stochastic decoder with a Wilson interval"""
    started = time.perf_counter()
    seeds = code_seeds(master_seed, num_codes)

    def work(c):
        code = sample_code(n, model.x_size, rates, seeds[c])
        errors = count_fr_errors(code, model, m, trials_per_code, derive_seed(master_seed, c, FR_STREAM))
        return errors, exact_leakage(code, model.p_x)

    results = _run_codes(work, num_codes, threads)
    errors = sum(e for e, _ in results)
    total = num_codes * trials_per_code
    report = SimulationReport(
        n=n, r_s=rates.r_s, r_w=rates.r_w, metric=m.describe(),
        num_codes=num_codes, num_trials=total, master_seed=master_seed, code_seeds=seeds,
        leakage_nats=float(np.mean([leak for _, leak in results])) if results else 0.0,
        fr_errors=errors, fr_estimate=errors / total if total else 0.0,
        fr_ci=wilson_interval(errors, total),
        wall_time=time.perf_counter() - started,
    )
    LOGGER.info("FR n=%d r_w=%.4g r_s=%.4g: %d/%d errors", n, rates.r_w, rates.r_s, errors, total)
    return report


def estimate_fa(model: SourceModel, rates: RatePair, n, num_codes, trials_per_code, master_seed,
                threads=config.DEFAULT_THREADS) -> SimulationReport:
    """Ensemble-averaged attack success probability of the helper-only imposter"""
    started = time.perf_counter()
    seeds = code_seeds(master_seed, num_codes)

    def work(c):
        code = sample_code(n, model.x_size, rates, seeds[c])
        hits = count_fa_successes(code, model, trials_per_code, derive_seed(master_seed, c, FA_STREAM))
        return hits, exact_leakage(code, model.p_x)

    results = _run_codes(work, num_codes, threads)
    successes = sum(h for h, _ in results)
    total = num_codes * trials_per_code
    report = SimulationReport(
        n=n, r_s=rates.r_s, r_w=rates.r_w, metric='imposter',
        num_codes=num_codes, num_trials=total, master_seed=master_seed, code_seeds=seeds,
        leakage_nats=float(np.mean([leak for _, leak in results])) if results else 0.0,
        fa_successes=successes, fa_estimate=successes / total if total else 0.0,
        fa_ci=wilson_interval(successes, total),
        wall_time=time.perf_counter() - started,
    )
    LOGGER.info("FA n=%d r_w=%.4g r_s=%.4g: %d/%d successes", n, rates.r_w, rates.r_s, successes, total)
    return report
