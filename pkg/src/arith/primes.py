import math
from typing import List

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 16

# Deterministic for every n < 3.3 * 10^24, which covers all 64-bit inputs.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _strong_probable_prime(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin test. Exact for every n below 2^64; there is no
    probabilistic mode.
    """
    if n < 2:
        return False
    for q in _WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(n, d, s, a) for a in _WITNESSES)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit, by a plain sieve of Eratosthenes."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q : limit + 1 : q] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in_range(
    lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> List[int]:
    """
    Primes in the closed interval [lo, hi], ascending.

    Segmented sieve: only the base primes up to sqrt(hi) and one segment of
    `segment_size` flags are held in memory at a time.
    """
    if segment_size < 1:
        raise ValueError(f"segment_size must be positive, got {segment_size}")
    lo = max(lo, 2)
    if lo > hi:
        return []

    base = simple_sieve(math.isqrt(hi))
    found: List[int] = []
    low = lo
    while low <= hi:
        high = min(low + segment_size, hi + 1)  # exclusive
        flags = np.ones(high - low, dtype=bool)
        for q in base:
            q = int(q)
            start = max(q * q, -(-low // q) * q)
            if start >= high:
                continue
            flags[start - low :: q] = False
        found.extend((low + np.flatnonzero(flags)).tolist())
        low = high
    return found
