"""Decoding metrics a(Q_XY) of the stochastic likelihood decoder family"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from ..measures.distributions import CondPmf, JointPmf
from ..measures.information import cond_entropy_array


class MetricKind(Enum):
    TEMPERED_LIKELIHOOD = 'tempered_likelihood'
    MISMATCHED = 'mismatched'
    MIN_ENTROPY = 'min_entropy'
    MAP_LIMIT = 'map_limit'


@dataclass(frozen=True, eq=False)
class DecodingMetric:
    """A metric kind with its inverse temperature.

    ``channel`` is a conditional pmf of X given Y (one row per y). A map-limit
    metric wraps a finite-beta ``base`` and stands for beta -> infinity.
    """

    kind: MetricKind
    beta: float = 1.0
    channel: Optional[CondPmf] = None
    base: Optional['DecodingMetric'] = None

    def __post_init__(self):
        if self.kind is MetricKind.MAP_LIMIT:
            if self.base is None or self.base.kind is MetricKind.MAP_LIMIT:
                raise ValueError("map_limit needs a finite-beta base metric")
            object.__setattr__(self, 'beta', float('inf'))
            return
        beta = float(self.beta)
        if not np.isfinite(beta) or beta <= 0.0:
            raise ValueError(f"beta must be finite and positive, got {beta}")
        object.__setattr__(self, 'beta', beta)
        needs_channel = self.kind in (MetricKind.TEMPERED_LIKELIHOOD, MetricKind.MISMATCHED)
        if needs_channel and self.channel is None:
            raise ValueError(f"{self.kind.value} needs a channel P(x|y)")

    @property
    def is_limit(self) -> bool:
        return self.kind is MetricKind.MAP_LIMIT

    @property
    def y_alphabet(self) -> Optional[int]:
        source = self.base if self.is_limit else self
        return None if source.channel is None else source.channel.given_size

    def with_beta(self, beta) -> 'DecodingMetric':
        if self.is_limit:
            return self.base.with_beta(beta)
        return replace(self, beta=beta)

    def unit(self) -> 'DecodingMetric':
        """The same metric at beta = 1 (the ordering a map limit follows)"""
        return self.with_beta(1.0)

    def evaluate(self, q) -> np.ndarray:
        """a(q) for joints shaped (..., X, Y); a map limit evaluates its beta = 1 base"""
        q = np.asarray(q, dtype=float)
        if self.is_limit:
            return self.base.unit().evaluate(q)
        if self.kind is MetricKind.MIN_ENTROPY:
            return -self.beta * cond_entropy_array(q)
        log_channel = _log_channel_xy(self.channel)
        with np.errstate(invalid='ignore'):
            terms = np.where(q > 0.0, q * log_channel, 0.0)
        return self.beta * terms.sum(axis=(-2, -1))

    def sequence_scores(self, counts, n) -> np.ndarray:
        """n * a(joint type) for joint type counts shaped (N, X, Y)"""
        counts = np.asarray(counts, dtype=float)
        return n * self.evaluate(counts / n)

    def describe(self) -> str:
        if self.is_limit:
            return f"map_limit({self.base.unit().describe()})"
        return f"{self.kind.value}(beta={self.beta:g})"

    def __repr__(self):
        return f"DecodingMetric({self.describe()})"


def _log_channel_xy(channel: CondPmf) -> np.ndarray:
    with np.errstate(divide='ignore'):
        return np.log(channel.probs).T


def tempered_likelihood(beta, channel: CondPmf) -> DecodingMetric:
    """beta * E_Q ln P(X|Y); beta = 1 is the ordinary likelihood decoder"""
    return DecodingMetric(MetricKind.TEMPERED_LIKELIHOOD, beta=beta, channel=channel)


def mismatched(beta, channel: CondPmf) -> DecodingMetric:
    """beta * E_Q ln P'(X|Y) for a decoder channel P' other than the source's"""
    return DecodingMetric(MetricKind.MISMATCHED, beta=beta, channel=channel)


def min_entropy(beta) -> DecodingMetric:
    """-beta * H_Q(X|Y); universal minimum-entropy decoding as beta grows"""
    return DecodingMetric(MetricKind.MIN_ENTROPY, beta=beta)


def map_limit(base: DecodingMetric) -> DecodingMetric:
    return DecodingMetric(MetricKind.MAP_LIMIT, base=base)


def matched_metric(p_xy: JointPmf, beta=1.0) -> DecodingMetric:
    """Tempered likelihood with the source's own P(x|y)"""
    return tempered_likelihood(beta, p_xy.conditional_x_given_y())


def metric_value(m: DecodingMetric, q: JointPmf) -> float:
    return float(m.evaluate(q.probs))
