"""Method-of-types machinery: type descriptors, enumeration and class sizes"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy.special import comb, gammaln

import config
from ..errors import AlphabetError, GuardExceededError
from .distributions import JointPmf, Pmf

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TypeDescriptor:
    """Exact integer counts of a type (1-d) or joint type (|X| x |Y|)"""

    n: int
    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim not in (1, 2) or counts.size == 0:
            raise ValueError(f"type counts must be a non-empty vector or matrix, got {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("type counts must be non-negative")
        if int(counts.sum()) != self.n:
            raise ValueError(f"type counts sum to {int(counts.sum())}, not n={self.n}")
        counts.flags.writeable = False
        object.__setattr__(self, 'counts', counts)

    @property
    def key(self) -> Tuple:
        return self.counts.shape, tuple(int(c) for c in self.counts.ravel())

    @property
    def is_joint(self) -> bool:
        return self.counts.ndim == 2

    def probabilities(self):
        probs = self.counts / self.n
        return JointPmf(probs) if self.is_joint else Pmf(probs)

    def __eq__(self, other):
        return isinstance(other, TypeDescriptor) and self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))

    def __repr__(self):
        return f"TypeDescriptor(n={self.n}, counts={self.counts.tolist()})"


def composition_count(total, parts) -> int:
    """Number of ways to write ``total`` as an ordered sum of ``parts`` non-negative integers"""
    return int(comb(total + parts - 1, parts - 1, exact=True))


@lru_cache(maxsize=256)
def _compositions(total, parts):
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        head = np.full((rest.shape[0], 1), first, dtype=np.int64)
        blocks.append(np.hstack([head, rest]))
    out = np.vstack(blocks)
    out.flags.writeable = False
    return out


def compositions(total, parts, guard=config.TYPE_ENUMERATION_GUARD) -> np.ndarray:
    """All compositions as rows, first coordinate ascending (lexicographic order)"""
    if parts < 1 or total < 0:
        raise ValueError(f"invalid composition request total={total}, parts={parts}")
    count = composition_count(total, parts)
    if count > guard:
        LOGGER.warning("refusing to enumerate %d compositions (guard %d)", count, guard)
        raise GuardExceededError('compositions', count, guard)
    return _compositions(total, parts)


def simplex_grid_array(k, m, guard=config.TYPE_ENUMERATION_GUARD) -> np.ndarray:
    """Grid points of the k-simplex at resolution m as an array of shape (count, k)"""
    if k < 1 or m < 1:
        raise ValueError(f"simplex grid needs k >= 1 and m >= 1, got k={k}, m={m}")
    return compositions(m, k, guard) / m


def simplex_grid(k, m, guard=config.TYPE_ENUMERATION_GUARD) -> Iterator[Pmf]:
    """Stream every pmf on k symbols whose entries are multiples of 1/m"""
    for row in simplex_grid_array(k, m, guard):
        yield Pmf(row)


def enumerate_joint_types(n, x_size, y_size,
                          guard=config.TYPE_ENUMERATION_GUARD) -> Iterator[TypeDescriptor]:
    """Stream every joint type of blocklength n over an |X| x |Y| alphabet"""
    for row in compositions(n, x_size * y_size, guard):
        yield TypeDescriptor(n, row.reshape(x_size, y_size))


def log_type_class_size(t: TypeDescriptor) -> float:
    """ln(n! / prod counts!), the exact log-size of the (joint) type class"""
    return float(gammaln(t.n + 1) - np.sum(gammaln(t.counts + 1.0)))


def log_conditional_type_class_size(t: TypeDescriptor) -> float:
    """ln |T(Q_{X|Y} | y)| for a joint type whose Y-marginal is the type of y"""
    if not t.is_joint:
        raise ValueError("conditional type class needs a joint type")
    column_totals = t.counts.sum(axis=0)
    return float(np.sum(gammaln(column_totals + 1.0)) - np.sum(gammaln(t.counts + 1.0)))


def _as_symbols(seq, size, name):
    symbols = np.asarray(seq, dtype=np.int64)
    if symbols.ndim != 1 or symbols.size == 0:
        raise AlphabetError(f"{name} must be a non-empty symbol sequence")
    if np.any(symbols < 0) or (size is not None and np.any(symbols >= size)):
        raise AlphabetError(f"{name} has symbols outside the alphabet of size {size}")
    return symbols


def empirical_joint(x, y, x_size: Optional[int] = None, y_size: Optional[int] = None) -> JointPmf:
    """Joint empirical distribution of two equal-length sequences"""
    xs = _as_symbols(x, x_size, 'x')
    ys = _as_symbols(y, y_size, 'y')
    if xs.size != ys.size:
        raise AlphabetError(f"sequence lengths differ: {xs.size} vs {ys.size}")
    x_size = x_size or int(xs.max()) + 1
    y_size = y_size or int(ys.max()) + 1
    counts = np.zeros((x_size, y_size), dtype=np.int64)
    np.add.at(counts, (xs, ys), 1)
    return JointPmf(counts / xs.size)


def joint_type_of(x, y, x_size, y_size) -> TypeDescriptor:
    xs = _as_symbols(x, x_size, 'x')
    ys = _as_symbols(y, y_size, 'y')
    if xs.size != ys.size:
        raise AlphabetError(f"sequence lengths differ: {xs.size} vs {ys.size}")
    counts = np.zeros((x_size, y_size), dtype=np.int64)
    np.add.at(counts, (xs, ys), 1)
    return TypeDescriptor(xs.size, counts)


@lru_cache(maxsize=32)
def all_vectors(n, size) -> np.ndarray:
    """Every vector of X^n in lexicographic order, shape (size**n, n)"""
    if size > 256:
        raise AlphabetError(f"alphabets above 256 symbols are not supported, got {size}")
    index = np.arange(size ** n, dtype=np.int64)
    powers = size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    vectors = ((index[:, None] // powers[None, :]) % size).astype(np.uint8)
    vectors.flags.writeable = False
    return vectors


def vector_index(x, size) -> int:
    """Lexicographic index sum_i x_i |X|^(n-1-i)"""
    index = 0
    for symbol in x:
        index = index * size + int(symbol)
    return index


def type_counts(vectors, size) -> np.ndarray:
    """Symbol counts of each row, shape (N, size)"""
    vectors = np.asarray(vectors)
    return np.stack([(vectors == a).sum(axis=1) for a in range(size)], axis=1)


def joint_type_counts(vectors, y, x_size, y_size) -> np.ndarray:
    """Joint type counts of each row of ``vectors`` with the fixed sequence y, shape (N, X, Y)"""
    vectors = np.asarray(vectors)
    y = np.asarray(y)
    counts = np.empty((vectors.shape[0], x_size, y_size), dtype=np.int64)
    for b in range(y_size):
        column = vectors[:, y == b]
        for a in range(x_size):
            counts[:, a, b] = (column == a).sum(axis=1)
    return counts
