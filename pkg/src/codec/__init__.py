from .binning import BinningCode, RatePair, bin_count, bin_occupancy, enroll, sample_code
from .dump import code_from_bytes, code_to_bytes, load_code, save_code
from .streams import derive_seed, raw_words, uniforms

__all__ = [
    'BinningCode', 'RatePair', 'bin_count', 'bin_occupancy', 'enroll', 'sample_code',
    'code_from_bytes', 'code_to_bytes', 'load_code', 'save_code',
    'derive_seed', 'raw_words', 'uniforms',
]
