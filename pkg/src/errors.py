"""Exceptions raised by the secret-key binning package"""


class SecretKeyBinningError(Exception):
    """Base class for every package error"""


class GuardExceededError(SecretKeyBinningError, ValueError):
    """An enumeration would exceed its configured guard"""

    def __init__(self, what, count, guard):
        self.what = what
        self.count = count
        self.guard = guard
        super().__init__(f"{what}: {count} items exceeds the guard of {guard}")


class AlphabetError(SecretKeyBinningError, ValueError):
    """Symbols or shapes do not match the declared alphabets"""


class EmptyBinError(SecretKeyBinningError):
    """A decoder was asked about a helper bin that holds no source vector"""

    def __init__(self, w):
        self.w = w
        super().__init__(f"helper bin {w} is empty")


class ConfigError(SecretKeyBinningError):
    """The run configuration is invalid"""


class InsufficientDataError(SecretKeyBinningError, ValueError):
    """Too few usable points for a regression"""


class NumericalRangeError(SecretKeyBinningError, ArithmeticError):
    """An exact evaluation left its range by more than rounding can explain"""

    def __init__(self, what, value, low, high):
        self.what = what
        self.value = value
        super().__init__(f"{what} {value!r} lies outside [{low}, {high}] beyond rounding")
