from builtins import int, max
import logging

import numpy as np

logger = logging.getLogger(__name__)


def radix_argsort(keys: np.ndarray, digit_bits: int = 16) -> np.ndarray:
    """Stable LSD radix sort of non-negative integer keys; returns the permutation.

    Each pass sorts one `digit_bits`-wide digit with numpy's stable sort, which
    is itself a counting/radix sort for integer dtypes of 16 bits or less.
    """
    keys = np.asarray(keys, dtype=np.int64)
    order = np.arange(keys.size, dtype=np.int64)
    if keys.size == 0:
        return order
    if keys.min() < 0:
        raise ValueError("radix_argsort needs non-negative keys")
    digit_dtype = np.uint8 if digit_bits <= 8 else np.uint16
    mask = (1 << digit_bits) - 1
    top = int(keys.max())
    shift = 0
    while True:
        digits = ((keys[order] >> shift) & mask).astype(digit_dtype)
        order = order[np.argsort(digits, kind="stable")]
        shift += digit_bits
        if (top >> shift) == 0:
            break
    return order


def is_small_integral(keys: np.ndarray, n: int, degree: int) -> bool:
    """True when every key is an integer in [0, (n+1)**degree]."""
    if keys.size == 0:
        return True
    if not np.all(np.floor(keys) == keys) or keys.min() < 0:
        return False
    return float(keys.max()) <= float(max(n, 1) + 1) ** degree


def stable_key_order(keys: np.ndarray, n: int, degree: int = 3, digit_bits: int = 16) -> np.ndarray:
    """Non-decreasing order of `keys`, ties kept in input order.

    Integral keys bounded by a polynomial in `n` take the linear-time radix
    path; anything else falls back to a stable comparison sort.
    """
    keys = np.asarray(keys)
    if is_small_integral(keys, n, degree):
        logger.debug(f"radix sort over {keys.size} keys")
        return radix_argsort(keys.astype(np.int64), digit_bits)
    logger.debug(f"comparison sort over {keys.size} keys")
    return np.argsort(keys, kind="stable")
