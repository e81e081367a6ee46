"""Secrecy exponent and the typical-code leakage bound"""

import logging

import numpy as np
from scipy.special import gammaln, logsumexp

import config
from ..measures.distributions import Pmf
from ..measures.extended import pos_part
from ..measures.grid import SimplexProductGrid
from ..measures.information import entropy_array, kl_array
from ..measures.types import compositions
from .optimize import ExponentResult, grid_minimize

LOGGER = logging.getLogger(__name__)


def secrecy_exponent(p_x: Pmf, r, resolution=config.GRID_RESOLUTION) -> ExponentResult:
    """E_sec(r) = min{D(Q_X || P_X): H_Q(X) <= r}"""
    if r < 0:
        raise ValueError(f"rate must be non-negative, got {r}")
    probs = p_x.probs
    size = p_x.alphabet_size
    grid = SimplexProductGrid(1, size)

    def objective(points):
        q = points[:, 0, :]
        feasible = entropy_array(q) <= r + config.CONSTRAINT_SLACK
        return np.where(feasible, kl_array(q, probs), np.inf)

    anchors = np.concatenate([probs[None, :], np.eye(size)])[:, None, :]
    found = grid_minimize(objective, grid, resolution, anchors=anchors)
    return ExponentResult(
        value=max(found.value, 0.0),
        argmin={} if found.point is None else {'q_x': found.point[0]},
        grid_resolution=found.resolution, refined=found.refined, kind='secrecy',
    )


def typical_leakage_bound(p_x: Pmf, n, r_s, r_w) -> float:
    """E[[n (r_s + r_w) - ln |T(type of X^n)|]_+] in nats, summed exactly over type classes"""
    counts = compositions(n, p_x.alphabet_size)
    log_class = gammaln(n + 1.0) - gammaln(counts + 1.0).sum(axis=1)
    with np.errstate(divide='ignore'):
        log_p = np.log(p_x.probs)
    with np.errstate(invalid='ignore'):
        log_seq = np.where(counts > 0, counts * log_p, 0.0).sum(axis=1)
    log_mass = log_class + log_seq
    weights = np.exp(log_mass - logsumexp(log_mass))
    excess = pos_part(n * (r_s + r_w) - log_class)
    return float(np.sum(weights * excess))
