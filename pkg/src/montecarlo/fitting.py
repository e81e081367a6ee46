"""Empirical exponents from finite-n probability estimates"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

import config
from ..errors import InsufficientDataError

LOGGER = logging.getLogger(__name__)


@dataclass
class ExponentFit:
    """Least-squares slope of -ln p_hat against n"""

    slope: float
    stderr: float
    intercept: float
    used: List[int] = field(default_factory=list)
    zero_estimates: List[int] = field(default_factory=list)


def fit_exponent(points: Sequence[Tuple[int, float]], n_min=config.FIT_N_MIN) -> ExponentFit:
    """Fit -ln p_hat = slope * n + intercept over the points with n >= n_min and p_hat > 0"""
    kept_n, kept_p, zeros = [], [], []
    for n, p_hat in points:
        if n < n_min:
            continue
        if p_hat <= 0.0:
            zeros.append(int(n))
            continue
        kept_n.append(float(n))
        kept_p.append(float(p_hat))
    if zeros:
        LOGGER.warning("excluding zero estimates at n=%s from the exponent fit", zeros)
    if len(kept_n) < 3:
        raise InsufficientDataError(f"need at least 3 usable points, got {len(kept_n)}")
    fit = linregress(np.array(kept_n), -np.log(np.array(kept_p)))
    return ExponentFit(
        slope=float(fit.slope), stderr=float(fit.stderr), intercept=float(fit.intercept),
        used=[int(n) for n in kept_n], zero_estimates=zeros,
    )
