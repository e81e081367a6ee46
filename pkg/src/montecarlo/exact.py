"""Exact FR, FA and leakage of a realised code by full enumeration"""

import logging

import numpy as np

import config
from ..codec.binning import BinningCode
from ..decoders.likelihood import imposter_guesses, posterior_table
from ..decoders.metric import DecodingMetric
from ..errors import GuardExceededError, NumericalRangeError
from ..measures.distributions import Pmf
from ..measures.information import entropy_array
from ..measures.types import all_vectors, type_counts
from .source import SourceModel

LOGGER = logging.getLogger(__name__)


def clip_to_range(value, high=1.0, what='probability'):
    """Clip rounding noise into [0, high]; anything further out raises"""
    array = np.asarray(value, dtype=float)
    low_end, high_end = float(array.min()), float(array.max())
    if low_end < -config.RANGE_TOLERANCE or high_end > high + config.RANGE_TOLERANCE:
        bad = low_end if low_end < 0.0 else high_end
        raise NumericalRangeError(what, bad, 0.0, high)
    return np.clip(array, 0.0, high)


def _log_sequence_probs(vectors, probs) -> np.ndarray:
    with np.errstate(divide='ignore'):
        log_p = np.log(probs)
    return log_p[vectors].sum(axis=1)


def source_vector_probs(code: BinningCode, p_x: Pmf) -> np.ndarray:
    """P(x) for every source vector of the code, in table order"""
    return np.exp(_log_sequence_probs(code.vectors(), p_x.probs))


def exact_fr_given_source(code: BinningCode, model: SourceModel, m: DecodingMetric) -> np.ndarray:
    """P_FR(x) = sum_y P(y|x) sum over s != g(x) of P~(s | y, f(x)) for every source vector"""
    pairs = (model.x_size * model.y_size) ** code.n
    if pairs > config.PAIR_ENUMERATION_GUARD:
        LOGGER.warning("exact FR over %d pairs exceeds the guard", pairs)
        raise GuardExceededError('source/observation pairs', pairs, config.PAIR_ENUMERATION_GUARD)
    vectors = code.vectors().astype(np.int64)
    with np.errstate(divide='ignore'):
        log_channel = np.log(model.p_y_given_x.probs)
    f = code.f_table.astype(np.int64)
    g = code.g_table.astype(np.int64)
    fr = np.zeros(code.num_vectors)
    for y in all_vectors(code.n, model.y_size).astype(np.int64):
        p_y_given_x = np.exp(log_channel[vectors, y[None, :]].sum(axis=1))
        table = posterior_table(code, m, y)
        fr += p_y_given_x * (1.0 - table.probs[f, g])
    return clip_to_range(fr, what='per-vector FR probability')


def exact_fr(code: BinningCode, model: SourceModel, m: DecodingMetric) -> float:
    """Average FR probability of the code under the stochastic decoder"""
    weights = source_vector_probs(code, model.p_x)
    fr = np.dot(weights, exact_fr_given_source(code, model, m))
    return float(clip_to_range(fr, what='FR probability'))


def expurgated_fr(code: BinningCode, model: SourceModel, m: DecodingMetric, counts, bad_fraction) -> float:
    """Worst per-vector FR within one type class after dropping its worst ``bad_fraction``"""
    if not 0.0 <= bad_fraction < 1.0:
        raise ValueError(f"bad_fraction must lie in [0, 1), got {bad_fraction}")
    counts = np.asarray(counts, dtype=np.int64)
    members = np.all(type_counts(code.vectors(), code.x_alphabet) == counts[None, :], axis=1)
    per_vector = np.sort(exact_fr_given_source(code, model, m)[members])[::-1]
    dropped = int(np.floor(bad_fraction * per_vector.size))
    kept = per_vector[dropped:]
    return float(kept[0]) if kept.size else 0.0


def exact_fa(code: BinningCode, p_x: Pmf) -> float:
    """Probability that the imposter's helper-only guess equals the enrolled key"""
    guesses = imposter_guesses(code, p_x)
    hit = guesses[code.f_table.astype(np.int64)] == code.g_table.astype(np.int64)
    success = np.sum(source_vector_probs(code, p_x)[hit])
    return float(clip_to_range(success, what='attack success probability'))


def exact_leakage(code: BinningCode, p_x: Pmf) -> float:
    """I(S; W) in nats for X^n ~ P_X^n pushed through (g, f)"""
    joint = np.zeros((code.m_s, code.m_w))
    np.add.at(joint, (code.g_table.astype(np.int64), code.f_table.astype(np.int64)),
              source_vector_probs(code, p_x))
    joint /= joint.sum()
    info = entropy_array(joint.sum(axis=1)) + entropy_array(joint.sum(axis=0)) - entropy_array(joint.ravel())
    ceiling = min(np.log(code.m_s), np.log(code.m_w))
    return float(clip_to_range(info, high=ceiling, what='leakage'))
