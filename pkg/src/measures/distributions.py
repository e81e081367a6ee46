"""Finite-alphabet probability objects"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

import config

LOGGER = logging.getLogger(__name__)


def _frozen(values, ndim, name):
    probs = np.array(values, dtype=float)
    if probs.ndim != ndim:
        raise ValueError(f"{name} expects a {ndim}-d array, got shape {probs.shape}")
    if probs.size == 0:
        raise ValueError(f"{name} cannot be empty")
    if not np.all(np.isfinite(probs)) or np.any(probs < 0.0):
        raise ValueError(f"{name} entries must be finite and non-negative")
    probs.flags.writeable = False
    return probs


def _check_total(total, name):
    if abs(total - 1.0) > config.PMF_TOLERANCE:
        raise ValueError(f"{name} sums to {total!r}, not 1")


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability vector over an alphabet {0, ..., alphabet_size - 1}"""

    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen(self.probs, 1, 'Pmf')
        _check_total(float(probs.sum()), 'Pmf')
        object.__setattr__(self, 'probs', probs)

    @property
    def alphabet_size(self) -> int:
        return int(self.probs.shape[0])

    @classmethod
    def uniform(cls, size):
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, size, symbol):
        probs = np.zeros(size)
        probs[symbol] = 1.0
        return cls(probs)

    @classmethod
    def from_counts(cls, counts):
        counts = np.asarray(counts, dtype=float)
        return cls(counts / counts.sum())

    def support(self) -> np.ndarray:
        return self.probs > 0.0

    def __repr__(self):
        return f"Pmf({np.array2string(self.probs, precision=6)})"


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Joint pmf stored as a matrix (or a tensor for three variables).

    Axis 0 is X, the last axis is Y. The three-variable form is X x X' x Y.
    """

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim not in (2, 3):
            raise ValueError(f"JointPmf expects a 2-d or 3-d array, got shape {probs.shape}")
        probs = _frozen(probs, probs.ndim, 'JointPmf')
        _check_total(float(probs.sum()), 'JointPmf')
        object.__setattr__(self, 'probs', probs)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.probs.shape)

    @property
    def rows(self) -> int:
        return int(self.probs.shape[0])

    @property
    def cols(self) -> int:
        return int(self.probs.shape[-1])

    def marginal(self, axis) -> Pmf:
        """Marginal pmf of the variable on the given axis"""
        others = tuple(i for i in range(self.probs.ndim) if i != axis)
        return Pmf(self.probs.sum(axis=others))

    def x_marginal(self) -> Pmf:
        return self.marginal(0)

    def y_marginal(self) -> Pmf:
        return self.marginal(self.probs.ndim - 1)

    def pair(self, first, second) -> 'JointPmf':
        """Marginal joint of two axes of a three-variable pmf"""
        if self.probs.ndim == 2:
            return self if (first, second) == (0, 1) else JointPmf(self.probs.T)
        dropped = ({0, 1, 2} - {first, second}).pop()
        probs = self.probs.sum(axis=dropped)
        if first > second:
            probs = probs.T
        return JointPmf(probs)

    def conditional_x_given_y(self) -> 'CondPmf':
        """P_{X|Y} as a CondPmf with one row per y (rows of empty columns are uniform)"""
        return CondPmf.from_joint(self.probs.T)

    def conditional_y_given_x(self) -> 'CondPmf':
        """P_{Y|X} as a CondPmf with one row per x"""
        return CondPmf.from_joint(self.probs)

    @classmethod
    def product(cls, p: Pmf, q: Pmf):
        return cls(np.outer(p.probs, q.probs))

    @classmethod
    def from_marginal_and_channel(cls, p_x: Pmf, channel: 'CondPmf'):
        """Q_X x Q_{Y|X}, channel rows indexed by x"""
        return cls(p_x.probs[:, None] * channel.probs)

    def __repr__(self):
        return f"JointPmf(shape={self.shape})"


@dataclass(frozen=True, eq=False)
class CondPmf:
    """Conditional pmf: row g is the distribution of the output given symbol g"""

    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen(self.probs, 2, 'CondPmf')
        totals = probs.sum(axis=1)
        for given, total in enumerate(totals):
            _check_total(float(total), f'CondPmf row {given}')
        object.__setattr__(self, 'probs', probs)

    @property
    def given_size(self) -> int:
        return int(self.probs.shape[0])

    @property
    def out_size(self) -> int:
        return int(self.probs.shape[1])

    def row(self, given) -> Pmf:
        return Pmf(self.probs[given])

    @classmethod
    def from_joint(cls, joint):
        """Condition axis 1 on axis 0 of a matrix of joint masses"""
        joint = np.asarray(joint, dtype=float)
        totals = joint.sum(axis=1, keepdims=True)
        width = joint.shape[1]
        with np.errstate(invalid='ignore', divide='ignore'):
            rows = np.where(totals > 0.0, joint / totals, 1.0 / width)
        return cls(rows)

    @classmethod
    def bsc(cls, crossover):
        """Binary symmetric channel"""
        p = float(crossover)
        return cls(np.array([[1.0 - p, p], [p, 1.0 - p]]))

    def __repr__(self):
        return f"CondPmf(given={self.given_size}, out={self.out_size})"


def dsbs(crossover) -> JointPmf:
    """Doubly symmetric binary source with the given crossover"""
    p = float(crossover)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"crossover must lie in [0, 1], got {p}")
    return JointPmf(0.5 * np.array([[1.0 - p, p], [p, 1.0 - p]]))
