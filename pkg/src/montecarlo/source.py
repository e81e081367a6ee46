"""Discrete memoryless source model"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..measures.distributions import CondPmf, JointPmf, Pmf, dsbs


@dataclass(frozen=True, eq=False)
class SourceModel:
    """i.i.d. pairs (X_i, Y_i) drawn from ``p_xy``"""

    p_xy: JointPmf

    @classmethod
    def dsbs(cls, crossover) -> 'SourceModel':
        return cls(dsbs(crossover))

    @property
    def x_size(self) -> int:
        return self.p_xy.rows

    @property
    def y_size(self) -> int:
        return self.p_xy.cols

    @cached_property
    def p_x(self) -> Pmf:
        return self.p_xy.x_marginal()

    @cached_property
    def p_y(self) -> Pmf:
        return self.p_xy.y_marginal()

    @cached_property
    def p_y_given_x(self) -> CondPmf:
        return self.p_xy.conditional_y_given_x()

    @cached_property
    def p_x_given_y(self) -> CondPmf:
        return self.p_xy.conditional_x_given_y()

    def sample_pairs(self, u):
        """Map uniforms of shape (T, n) to source/observation symbol arrays (x, y)"""
        cells = draw_symbols(self.p_xy.probs.ravel(), u)
        return cells // self.y_size, cells % self.y_size

    def sample_sources(self, u) -> np.ndarray:
        """Map uniforms of shape (T, n) to source vectors drawn from P_X"""
        return draw_symbols(self.p_x.probs, u)


def draw_symbols(probs, u) -> np.ndarray:
    """Inverse-CDF symbols; cells of zero probability are never returned"""
    probs = np.asarray(probs, dtype=float)
    cumulative = np.cumsum(probs)
    index = np.searchsorted(cumulative, np.asarray(u) * cumulative[-1], side='right')
    last = int(np.flatnonzero(probs > 0.0)[-1])
    return np.minimum(index, last)


def lexicographic_index(vectors, size) -> np.ndarray:
    """Row-wise sum_i v_i |A|^(n-1-i)"""
    vectors = np.asarray(vectors, dtype=np.int64)
    powers = size ** np.arange(vectors.shape[-1] - 1, -1, -1, dtype=np.int64)
    return vectors @ powers
