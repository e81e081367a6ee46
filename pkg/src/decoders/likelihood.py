"""Stochastic likelihood decoding, its MAP limit and the imposter's estimator"""

import logging
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from scipy.special import logsumexp

import config
from ..codec.binning import BinningCode
from ..errors import AlphabetError, EmptyBinError, GuardExceededError
from ..measures.distributions import Pmf
from ..measures.types import joint_type_counts, type_counts
from .metric import DecodingMetric

LOGGER = logging.getLogger(__name__)

# Scores of one bin within this distance of the bin maximum count as maximisers
LIMIT_TIE_TOLERANCE = 1e-9


class PosteriorStatus(IntEnum):
    OK = 0
    EMPTY_BIN = 1  # no source vector in the bin: uniform over keys
    DEGENERATE = 2  # every member scored -inf: weights by key multiplicity


@dataclass(frozen=True, eq=False)
class KeyPosterior:
    """Posterior over keys for one (y, w); ``log_weights`` are unnormalised log masses"""

    probs: Pmf
    log_weights: np.ndarray
    status: PosteriorStatus

    @property
    def is_flagged(self) -> bool:
        return self.status is not PosteriorStatus.OK


@dataclass(frozen=True, eq=False)
class PosteriorTable:
    """Posteriors for every helper message at one y, rows indexed by w"""

    probs: np.ndarray
    log_weights: np.ndarray
    status: np.ndarray

    def row(self, w) -> KeyPosterior:
        return KeyPosterior(Pmf(self.probs[w]), self.log_weights[w], PosteriorStatus(int(self.status[w])))


def _y_symbols(metric: DecodingMetric, y, n):
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (n,) or np.any(y < 0):
        raise AlphabetError(f"y must be a length-{n} symbol sequence")
    y_size = metric.y_alphabet or int(y.max()) + 1
    if np.any(y >= y_size):
        raise AlphabetError(f"y has symbols outside the alphabet of size {y_size}")
    return y, y_size


def candidate_scores(code: BinningCode, metric: DecodingMetric, y, members=None) -> np.ndarray:
    """n * a(joint type of (x', y)) for every source vector x' (or the given members)"""
    y, y_size = _y_symbols(metric, y, code.n)
    vectors = code.vectors() if members is None else code.vectors()[members]
    counts = joint_type_counts(vectors, y, code.x_alphabet, y_size)
    return metric.sequence_scores(counts, code.n)


def _accumulate(scores, rows, keys, num_rows, m_s, limit):
    """Per-(row, key) posterior from member scores; returns probs, log weights and status"""
    multiplicity = np.zeros((num_rows, m_s), dtype=np.int64)
    np.add.at(multiplicity, (rows, keys), 1)
    log_weights = np.full((num_rows, m_s), -np.inf)
    if limit:
        best = np.full(num_rows, -np.inf)
        np.maximum.at(best, rows, scores)
        winners = np.isfinite(scores) & (scores >= best[rows] - LIMIT_TIE_TOLERANCE)
        winner_counts = np.zeros((num_rows, m_s), dtype=np.int64)
        np.add.at(winner_counts, (rows[winners], keys[winners]), 1)
        with np.errstate(divide='ignore'):
            log_weights = np.log(winner_counts.astype(float))
    else:
        np.logaddexp.at(log_weights, (rows, keys), scores)
    with np.errstate(divide='ignore', invalid='ignore'):
        totals = logsumexp(log_weights, axis=1)
    occupied = multiplicity.sum(axis=1)
    status = np.full(num_rows, PosteriorStatus.OK, dtype=np.int8)
    status[~np.isfinite(totals)] = PosteriorStatus.DEGENERATE
    status[occupied == 0] = PosteriorStatus.EMPTY_BIN
    probs = np.empty((num_rows, m_s))
    ok = status == PosteriorStatus.OK
    probs[ok] = np.exp(log_weights[ok] - totals[ok, None])
    probs[ok] /= probs[ok].sum(axis=1, keepdims=True)
    degenerate = status == PosteriorStatus.DEGENERATE
    if np.any(degenerate):
        LOGGER.warning("%d bin(s) scored -inf throughout; using key multiplicities",
                       int(degenerate.sum()))
        probs[degenerate] = multiplicity[degenerate] / occupied[degenerate, None]
    probs[status == PosteriorStatus.EMPTY_BIN] = 1.0 / m_s
    return probs, log_weights, status


def posterior_from_scores(scores, keys, m_s, limit=False) -> KeyPosterior:
    """Key posterior of a single bin from its members' scores and keys"""
    scores = np.asarray(scores, dtype=float)
    keys = np.asarray(keys, dtype=np.int64)
    rows = np.zeros(keys.shape[0], dtype=np.int64)
    probs, log_weights, status = _accumulate(scores, rows, keys, 1, m_s, limit)
    return KeyPosterior(Pmf(probs[0]), log_weights[0], PosteriorStatus(int(status[0])))


def key_posterior(code: BinningCode, metric: DecodingMetric, y, w) -> KeyPosterior:
    """P~(s | y, w) proportional to sum over the bin of exp{n a(P_x'y)}, key by key"""
    members = code.bin_members(w)
    scores = candidate_scores(code, metric, y, members)
    keys = code.g_table[members].astype(np.int64)
    return posterior_from_scores(scores, keys, code.m_s, limit=metric.is_limit)


def posterior_table(code: BinningCode, metric: DecodingMetric, y) -> PosteriorTable:
    """Key posteriors for every helper message at once"""
    cells = code.m_w * code.m_s
    if cells > config.POSTERIOR_TABLE_GUARD:
        raise GuardExceededError('posterior table cells', cells, config.POSTERIOR_TABLE_GUARD)
    scores = candidate_scores(code, metric, y)
    probs, log_weights, status = _accumulate(
        scores, code.f_table.astype(np.int64), code.g_table.astype(np.int64),
        code.m_w, code.m_s, metric.is_limit)
    return PosteriorTable(probs, log_weights, status)


def sample_index(probs, u) -> np.ndarray:
    """Inverse-CDF draw along the last axis; zero-probability entries are never chosen"""
    probs = np.asarray(probs, dtype=float)
    u = np.asarray(u, dtype=float)
    cumulative = np.cumsum(probs, axis=-1)
    target = u[..., None] * cumulative[..., -1:]
    index = np.sum(cumulative <= target, axis=-1)
    return np.minimum(index, probs.shape[-1] - 1)


def stochastic_decode(code: BinningCode, metric: DecodingMetric, y, w, rng: np.random.Generator) -> int:
    """Draw a key from the posterior using one uniform from ``rng``"""
    posterior = key_posterior(code, metric, y, w)
    if posterior.status is PosteriorStatus.EMPTY_BIN:
        raise EmptyBinError(w)
    return int(sample_index(posterior.probs.probs, rng.random()))


def _argmax_key(code: BinningCode, members, log_mass):
    keys = code.g_table[members].astype(np.int64)
    per_key = np.full(code.m_s, -np.inf)
    np.logaddexp.at(per_key, keys, log_mass)
    if not np.isfinite(per_key.max()):
        return int(keys.min())
    return int(np.argmax(per_key))


def map_decode(code: BinningCode, model, y, w) -> int:
    """argmax_s sum over {x': f(x') = w, g(x') = s} of P(x'|y); ties go to the smallest key.

    ``model`` supplies ``p_x_given_y`` (a conditional pmf with one row per y).
    """
    members = code.bin_members(w)
    if members.size == 0:
        raise EmptyBinError(w)
    channel = model.p_x_given_y
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (code.n,) or np.any(y < 0) or np.any(y >= channel.given_size):
        raise AlphabetError(f"y must be a length-{code.n} sequence over {channel.given_size} symbols")
    counts = joint_type_counts(code.vectors()[members], y, code.x_alphabet, channel.given_size)
    with np.errstate(divide='ignore'):
        log_channel = np.log(channel.probs).T
    with np.errstate(invalid='ignore'):
        log_mass = np.where(counts > 0, counts * log_channel, 0.0).sum(axis=(1, 2))
    return _argmax_key(code, members, log_mass)


def _log_prior(code: BinningCode, p_x: Pmf, members=None):
    vectors = code.vectors() if members is None else code.vectors()[members]
    counts = type_counts(vectors, code.x_alphabet)
    with np.errstate(divide='ignore'):
        log_p = np.log(p_x.probs)
    with np.errstate(invalid='ignore'):
        return np.where(counts > 0, counts * log_p, 0.0).sum(axis=1)


def imposter_decode(code: BinningCode, w, p_x: Pmf) -> int:
    """argmax_s sum over {x: f(x) = w, g(x) = s} of P(x); ties go to the smallest key"""
    members = code.bin_members(w)
    if members.size == 0:
        raise EmptyBinError(w)
    return _argmax_key(code, members, _log_prior(code, p_x, members))


def imposter_guesses(code: BinningCode, p_x: Pmf) -> np.ndarray:
    """The imposter's key for every helper message; -1 marks an empty bin"""
    rows = code.f_table.astype(np.int64)
    keys = code.g_table.astype(np.int64)
    table = np.full((code.m_w, code.m_s), -np.inf)
    np.logaddexp.at(table, (rows, keys), _log_prior(code, p_x))
    occupied = np.zeros((code.m_w, code.m_s), dtype=bool)
    occupied[rows, keys] = True
    guesses = np.argmax(table, axis=1)
    impossible = ~np.isfinite(table.max(axis=1))
    guesses[impossible] = np.argmax(occupied[impossible], axis=1)
    guesses[~occupied.any(axis=1)] = -1
    return guesses
