"""Information measures in nats.

The ``*_array`` kernels work on raw numpy arrays and broadcast over leading
axes so the exponent optimisers can evaluate whole grids at once. The public
functions take the probability objects from ``distributions``.
"""

import numpy as np
from scipy import stats
from scipy.special import logsumexp

from ..errors import AlphabetError
from .distributions import CondPmf, JointPmf, Pmf
from .extended import xlogy


def entropy_array(p, axis=-1):
    """-sum p ln p along ``axis`` with 0 ln 0 = 0"""
    return -np.sum(xlogy(p, p), axis=axis)


def cond_entropy_array(q):
    """H(X|Y) of joints shaped (..., X, Y)"""
    return entropy_array(q.reshape(q.shape[:-2] + (-1,))) - entropy_array(q.sum(axis=-2))


def kl_array(q, p, axis=-1):
    """D(q||p) along ``axis``; +inf where q has mass outside the support of p"""
    q = np.asarray(q, dtype=float)
    p = np.broadcast_to(np.asarray(p, dtype=float), q.shape)
    with np.errstate(divide='ignore', invalid='ignore'):
        terms = np.where(q > 0.0, q * (np.log(q) - np.log(p)), 0.0)
    terms = np.where((q > 0.0) & (p == 0.0), np.inf, terms)
    return np.sum(terms, axis=axis)


def entropy(p: Pmf) -> float:
    return float(stats.entropy(p.probs))


def joint_entropy(j: JointPmf) -> float:
    return float(stats.entropy(j.probs.ravel()))


def cond_entropy(j: JointPmf) -> float:
    """H(X|Y) = H(X,Y) - H(Y), clipped at 0 against rounding"""
    return max(joint_entropy(j) - entropy(j.y_marginal()), 0.0)


def mutual_information(j: JointPmf) -> float:
    return max(entropy(j.x_marginal()) - cond_entropy(j), 0.0)


def kl(q: Pmf, p: Pmf) -> float:
    if q.alphabet_size != p.alphabet_size:
        raise AlphabetError(
            f"kl over alphabets of size {q.alphabet_size} and {p.alphabet_size}")
    return float(kl_array(q.probs, p.probs))


def weighted_cond_kl(qyx: CondPmf, pyx: CondPmf, qx: Pmf) -> float:
    """D(Q_{Y|X} || P_{Y|X} | Q_X) = sum_x Q(x) D(Q(.|x) || P(.|x))"""
    if qyx.probs.shape != pyx.probs.shape or qx.alphabet_size != qyx.given_size:
        raise AlphabetError(
            f"shape mismatch: {qyx.probs.shape}, {pyx.probs.shape}, {qx.alphabet_size}")
    rows = kl_array(qyx.probs, pyx.probs, axis=1)
    weighted = np.where(qx.probs > 0.0, qx.probs * rows, 0.0)
    return float(np.sum(weighted))


def renyi_entropy(p: Pmf, order) -> float:
    """Renyi entropy of the given order; orders 0, 1 and inf are the usual limits"""
    order = float(order)
    probs = p.probs[p.probs > 0.0]
    if order == 1.0:
        return entropy(p)
    if order == 0.0:
        return float(np.log(probs.size))
    if np.isinf(order):
        return float(-np.log(probs.max()))
    return float(logsumexp(order * np.log(probs)) / (1.0 - order))
