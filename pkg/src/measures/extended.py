"""Extended-real helpers used by the exponent formulas

Values live in [-inf, +inf] and are carried as numpy floats. The rules are:
+inf dominates sums, [-inf]_+ is 0, an empty infimum is +inf and an empty
supremum is -inf.
"""

import numpy as np


def pos_part(x):
    """[x]_+ with [-inf]_+ = 0"""
    return np.maximum(x, 0.0)


def ext_sub(a, b):
    """a - b where +inf on either side of the subtraction dominates"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid='ignore'):
        out = a - b
    return np.where((a == np.inf) | (b == -np.inf), np.inf, out)


def ext_add(*terms):
    """Sum of extended reals; any +inf term makes the sum +inf"""
    total = np.asarray(0.0)
    plus_inf = np.asarray(False)
    for term in terms:
        term = np.asarray(term, dtype=float)
        plus_inf = plus_inf | (term == np.inf)
        with np.errstate(invalid='ignore'):
            total = total + np.where(term == np.inf, 0.0, term)
    return np.where(plus_inf, np.inf, total)


def pos_diff(a, b):
    """[a - b]_+ for extended reals.

    0 when a is -inf, +inf when b is -inf (and a is not), max(a - b, 0) otherwise.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid='ignore'):
        diff = np.maximum(a - b, 0.0)
    diff = np.where(b == -np.inf, np.inf, diff)
    return np.where(a == -np.inf, 0.0, diff)


def ext_min(values):
    """Infimum of a possibly empty collection"""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return np.inf
    return float(np.min(values))


def ext_max(values):
    """Supremum of a possibly empty collection"""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return -np.inf
    return float(np.max(values))


def xlogy(x, y):
    """x * ln(y) with 0 * ln(0) = 0 and x > 0, y = 0 giving -inf"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        out = x * np.log(y)
    return np.where(x == 0.0, 0.0, out)
