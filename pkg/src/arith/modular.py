from typing import Optional

import numpy as np

from arith.factor import factorize
from data_models import Factorization

# Products of two residues stay below 2^64 in uint64 arithmetic.
VECTOR_MODULUS_LIMIT = 1 << 32


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base^exponent mod modulus in O(log exponent) multiplications, exactly."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if base < 0 or exponent < 0:
        raise ValueError(f"base and exponent must be non-negative, got {base}, {exponent}")
    return pow(base, exponent, modulus)


def mod_pow_array(bases: np.ndarray, exponent: int, modulus: int) -> np.ndarray:
    """
    Element-wise bases^exponent mod modulus by square-and-multiply over the
    whole array. Falls back to Python integers for moduli of 2^32 and above.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative, got {exponent}")
    if modulus >= VECTOR_MODULUS_LIMIT:
        return np.array([pow(int(b), exponent, modulus) for b in bases], dtype=object)

    m = np.uint64(modulus)
    result = np.ones(len(bases), dtype=np.uint64)
    square = np.asarray(bases, dtype=np.uint64) % m
    while exponent:
        if exponent & 1:
            result = result * square % m
        exponent >>= 1
        if exponent:
            square = square * square % m
    return result % m


def multiplicative_order(x: int, p: int, pm1: Optional[Factorization] = None) -> int:
    """
    Least d with x^d = 1 (mod p). Starts from p-1 and strips each prime factor
    while the power stays 1, so no divisor scan is needed.
    """
    if x % p == 0:
        raise ValueError(f"{x} is not invertible modulo {p}")
    if pm1 is None:
        pm1 = factorize(p - 1)
    order = p - 1
    for q, e in pm1.factors:
        for _ in range(e):
            if pow(x, order // q, p) != 1:
                break
            order //= q
    return order


def has_order(x: int, d: int, p: int, fd: Factorization) -> bool:
    """ord_p x == d, in 1 + omega(d) modular exponentiations."""
    if pow(x, d, p) != 1:
        return False
    return all(pow(x, d // q, p) != 1 for q in fd.primes)
