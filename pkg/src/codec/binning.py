"""Random-binning enrollment codes"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

import config
from ..errors import AlphabetError, GuardExceededError
from ..measures.types import TypeDescriptor, all_vectors, joint_type_counts, vector_index
from .streams import raw_words, scale_to_range

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatePair:
    """Secret-key rate r_s and helper rate r_w in nats per symbol"""

    r_s: float
    r_w: float

    def __post_init__(self):
        for name in ('r_s', 'r_w'):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")
            object.__setattr__(self, name, value)


def bin_count(n, rate) -> int:
    """max(1, round(e^{n R})), the number of indices a rate buys at blocklength n"""
    exponent = n * rate
    if exponent > math.log(config.MAX_BIN_COUNT) + 1.0:
        raise GuardExceededError('bin count', f"e^{exponent:.3g}", config.MAX_BIN_COUNT)
    count = max(1, int(round(math.exp(exponent))))
    if count > config.MAX_BIN_COUNT:
        raise GuardExceededError('bin count', count, config.MAX_BIN_COUNT)
    return count


def check_source_guard(n, x_alphabet, guard=config.SOURCE_ENUMERATION_GUARD) -> int:
    count = x_alphabet ** n
    if count > guard:
        LOGGER.warning("|X|^n = %d exceeds the enumeration guard %d", count, guard)
        raise GuardExceededError('source vectors', count, guard)
    return count


@dataclass(frozen=True, eq=False)
class BinningCode:
    """Helper and key tables over every source vector, in lexicographic order"""

    n: int
    x_alphabet: int
    m_s: int
    m_w: int
    f_table: np.ndarray
    g_table: np.ndarray
    seed: int

    def __post_init__(self):
        size = self.x_alphabet ** self.n
        for name, bound in (('f_table', self.m_w), ('g_table', self.m_s)):
            table = np.array(getattr(self, name), dtype=np.uint32)
            if table.shape != (size,):
                raise ValueError(f"{name} must have {size} entries, got shape {table.shape}")
            if table.size and int(table.max()) >= bound:
                raise ValueError(f"{name} holds an index outside [0, {bound})")
            table.flags.writeable = False
            object.__setattr__(self, name, table)

    @property
    def num_vectors(self) -> int:
        return int(self.f_table.shape[0])

    def vectors(self) -> np.ndarray:
        return all_vectors(self.n, self.x_alphabet)

    def index_of(self, x) -> int:
        x = np.asarray(x)
        if x.shape != (self.n,):
            raise AlphabetError(f"expected a vector of length {self.n}, got shape {x.shape}")
        if np.any(x < 0) or np.any(x >= self.x_alphabet):
            raise AlphabetError(f"symbols must lie in [0, {self.x_alphabet})")
        return vector_index(x, self.x_alphabet)

    def bin_members(self, w) -> np.ndarray:
        """Indices of the source vectors enrolled under helper message w"""
        return np.flatnonzero(self.f_table == w)

    def with_tables(self, f_table=None, g_table=None) -> 'BinningCode':
        """Copy of the code with one or both tables replaced"""
        return BinningCode(
            n=self.n, x_alphabet=self.x_alphabet, m_s=self.m_s, m_w=self.m_w,
            f_table=self.f_table if f_table is None else f_table,
            g_table=self.g_table if g_table is None else g_table,
            seed=self.seed,
        )


def sample_code(n, x_alphabet, rates: RatePair, seed,
                chunk=config.CODE_CHUNK_VECTORS) -> BinningCode:
    """Draw (f(x), g(x)) i.i.d. uniform for every x in X^n.

    Vector i takes stream words 2i (helper) and 2i + 1 (key) of the Philox
    stream keyed on ``seed``; chunks are generated independently from the counter.
    """
    if n < 1 or x_alphabet < 1:
        raise ValueError(f"need n >= 1 and |X| >= 1, got n={n}, |X|={x_alphabet}")
    size = check_source_guard(n, x_alphabet)
    m_s = bin_count(n, rates.r_s)
    m_w = bin_count(n, rates.r_w)
    f_table = np.empty(size, dtype=np.uint32)
    g_table = np.empty(size, dtype=np.uint32)
    for start in range(0, size, chunk):
        stop = min(size, start + chunk)
        words = raw_words(seed, 2 * start, 2 * (stop - start))
        f_table[start:stop] = scale_to_range(words[0::2], m_w)
        g_table[start:stop] = scale_to_range(words[1::2], m_s)
    LOGGER.debug("sampled code n=%d |X|=%d m_s=%d m_w=%d seed=%d", n, x_alphabet, m_s, m_w, seed)
    return BinningCode(n=n, x_alphabet=x_alphabet, m_s=m_s, m_w=m_w,
                       f_table=f_table, g_table=g_table, seed=int(seed))


def enroll(code: BinningCode, x) -> Tuple[int, int]:
    """(key, helper) of a source vector"""
    index = code.index_of(x)
    return int(code.g_table[index]), int(code.f_table[index])


def bin_occupancy(code: BinningCode, y, t: TypeDescriptor, w) -> int:
    """Number of x' in the conditional type class T(t | y) with f(x') = w"""
    if not t.is_joint or t.n != code.n or t.counts.shape[0] != code.x_alphabet:
        raise AlphabetError("occupancy needs a joint type over X x Y at the code blocklength")
    y = np.asarray(y, dtype=np.int64)
    y_size = t.counts.shape[1]
    if y.shape != (code.n,) or np.any(y < 0) or np.any(y >= y_size):
        raise AlphabetError(f"y must be a length-{code.n} sequence over {y_size} symbols")
    if not np.array_equal(t.counts.sum(axis=0), np.bincount(y, minlength=y_size)):
        return 0
    members = code.bin_members(w)
    counts = joint_type_counts(code.vectors()[members], y, code.x_alphabet, y_size)
    return int(np.all(counts == t.counts[None, :, :], axis=(1, 2)).sum())
