"""Counter-based random streams.

Every stream is a Philox generator keyed on a 64-bit seed. Output word k of a
stream is a pure function of (key, k), so any slice can be produced without
generating the words before it.
"""

import numpy as np

_WORDS_PER_BLOCK = 4


def derive_seed(*words) -> int:
    """A 64-bit key derived from a tuple of non-negative integers"""
    sequence = np.random.SeedSequence([int(w) for w in words])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def raw_words(key, start, count) -> np.ndarray:
    """Words ``start .. start + count - 1`` of the stream keyed on ``key``"""
    if count <= 0:
        return np.empty(0, dtype=np.uint64)
    block, skip = divmod(int(start), _WORDS_PER_BLOCK)
    # Philox bumps its counter before producing a block, so counter c yields block c.
    generator = np.random.Philox(key=int(key), counter=block)
    words = generator.random_raw(skip + count)
    return np.asarray(words[skip:], dtype=np.uint64)


def uniforms(key, start, count) -> np.ndarray:
    """Doubles in [0, 1) built from the top 53 bits of each word"""
    return (raw_words(key, start, count) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def scale_to_range(words, m) -> np.ndarray:
    """Map 64-bit words to [0, m) with the multiply-shift rule ((w >> 32) * m) >> 32"""
    high = np.asarray(words, dtype=np.uint64) >> np.uint64(32)
    return ((high * np.uint64(m)) >> np.uint64(32)).astype(np.uint32)
