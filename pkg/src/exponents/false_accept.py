"""False-accept exponent of the imposter who sees only the helper message"""

import logging

import numpy as np
from scipy.special import logsumexp

import config
from ..measures.distributions import Pmf
from ..measures.extended import pos_part
from ..measures.grid import SimplexProductGrid
from ..measures.information import entropy_array, kl_array
from .optimize import ExponentResult, grid_minimize

LOGGER = logging.getLogger(__name__)


def fa_exponent_types(p_x: Pmf, r_w, r_s, resolution=config.GRID_RESOLUTION) -> ExponentResult:
    """min over Q_X of D(Q_X || P_X) + min{r_s, [H_Q(X) - r_w]_+}"""
    probs = p_x.probs
    grid = SimplexProductGrid(1, p_x.alphabet_size)

    def objective(points):
        q = points[:, 0, :]
        return kl_array(q, probs) + np.minimum(r_s, pos_part(entropy_array(q) - r_w))

    found = grid_minimize(objective, grid, resolution, anchors=probs[None, None, :])
    return ExponentResult(
        value=max(found.value, 0.0),
        argmin={'q_x': found.point[0]},
        grid_resolution=found.resolution, refined=found.refined, kind='fa_types',
    )


def gallager_source_function(p_x: Pmf, rho) -> np.ndarray:
    """-rho ln sum_x P(x)^(1/rho), with the rho -> 0 limit -ln max_x P(x)"""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    with np.errstate(divide='ignore'):
        log_p = np.log(p_x.probs)
    out = np.empty_like(rho)
    zero = rho == 0.0
    out[zero] = -log_p.max()
    positive = rho[~zero]
    out[~zero] = -positive * logsumexp(log_p[None, :] / positive[:, None], axis=1)
    return out


def _gallager_search(p_x, r_w, r_s, steps):
    grid = np.linspace(0.0, 1.0, steps + 1)
    # the rho-dependent part; the max over rho >= s is a suffix maximum
    g = gallager_source_function(p_x, grid) + grid * r_w
    suffix = np.maximum.accumulate(g[::-1])[::-1]
    values = suffix + grid * r_s - r_w
    best = int(np.argmin(values))
    rho_index = best + int(np.argmax(g[best:]))
    return float(values[best]), float(grid[best]), float(grid[rho_index])


def fa_exponent_gallager(p_x: Pmf, r_w, r_s, resolution=config.GALLAGER_RESOLUTION) -> ExponentResult:
    """min over s in [0, 1], max over rho in [s, 1] of -rho ln sum P^(1/rho) + s r_s - (1 - rho) r_w"""
    value, s, rho = _gallager_search(p_x, r_w, r_s, resolution * config.REFINE_FACTOR)
    return ExponentResult(
        value=max(value, 0.0),
        argmin={'s': s, 'rho': rho},
        grid_resolution=resolution, refined=True, kind='fa_gallager',
    )
