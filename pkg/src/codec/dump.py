"""Binary dump of a binning code.

Layout: a fixed little-endian header (magic, version, n, |X|, m_s, m_w, seed)
followed by the helper table and the key table as u32 arrays in lexicographic
vector order.
"""

import logging
from pathlib import Path

import numpy as np

from .binning import BinningCode

LOGGER = logging.getLogger(__name__)

MAGIC = b'SWBC'
VERSION = 1

HEADER_DTYPE = np.dtype([
    ('magic', 'S4'),
    ('version', '<u4'),
    ('n', '<u4'),
    ('x_alphabet', '<u4'),
    ('m_s', '<u8'),
    ('m_w', '<u8'),
    ('seed', '<u8'),
])


def code_to_bytes(code: BinningCode) -> bytes:
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header['magic'] = MAGIC
    header['version'] = VERSION
    header['n'] = code.n
    header['x_alphabet'] = code.x_alphabet
    header['m_s'] = code.m_s
    header['m_w'] = code.m_w
    header['seed'] = code.seed
    return (header.tobytes()
            + code.f_table.astype('<u4').tobytes()
            + code.g_table.astype('<u4').tobytes())


def code_from_bytes(blob: bytes) -> BinningCode:
    if len(blob) < HEADER_DTYPE.itemsize:
        raise ValueError("truncated code dump: header incomplete")
    header = np.frombuffer(blob, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(header['magic']) != MAGIC:
        raise ValueError(f"not a code dump (magic {bytes(header['magic'])!r})")
    if int(header['version']) != VERSION:
        raise ValueError(f"unsupported code dump version {int(header['version'])}")
    n = int(header['n'])
    x_alphabet = int(header['x_alphabet'])
    size = x_alphabet ** n
    tables = np.frombuffer(blob, dtype='<u4', offset=HEADER_DTYPE.itemsize)
    if tables.size != 2 * size:
        raise ValueError(f"code dump holds {tables.size} table entries, expected {2 * size}")
    return BinningCode(
        n=n, x_alphabet=x_alphabet,
        m_s=int(header['m_s']), m_w=int(header['m_w']),
        f_table=tables[:size], g_table=tables[size:],
        seed=int(header['seed']),
    )


def save_code(code: BinningCode, path) -> None:
    Path(path).write_bytes(code_to_bytes(code))
    LOGGER.info("wrote code dump to %s", path)


def load_code(path) -> BinningCode:
    return code_from_bytes(Path(path).read_bytes())
