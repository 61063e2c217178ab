from typing import Dict, List, Optional

import numpy as np

from arith.factor import divisor_factorizations, euler_phi, factorize
from arith.modular import VECTOR_MODULUS_LIMIT, has_order, mod_pow_array, multiplicative_order
from data_models import Factorization, FixedPointProfile

DEFAULT_ORACLE_BUDGET = 10**7


class OracleBudgetError(ValueError):
    pass


def fixed_points_bruteforce(p: int) -> List[int]:
    """x in [1, p-1] with x^x = x (mod p), by direct evaluation."""
    return [x for x in range(1, p) if pow(x, x, p) == x]


def is_fixed_point_by_order(x: int, p: int, pm1: Optional[Factorization] = None) -> bool:
    """x is fixed exactly when x = 1 modulo its own multiplicative order."""
    return (x - 1) % multiplicative_order(x, p, pm1) == 0


def fixed_points_by_order(p: int, pm1: Optional[Factorization] = None) -> List[int]:
    if pm1 is None:
        pm1 = factorize(p - 1)
    return [x for x in range(1, p) if is_fixed_point_by_order(x, p, pm1)]


def _count_order_in_progression(p: int, fd: Factorization) -> int:
    """
    Members of {1, d+1, 2d+1, ..., p-d} with order exactly d. This is
    has_order vectorized: x^d = 1 is filtered over the whole progression
    first and only the survivors (about one on average) get the
    per-prime-factor checks. Moduli too wide for uint64 products use
    has_order directly.
    """
    d = fd.n
    if p >= VECTOR_MODULUS_LIMIT:
        return sum(1 for x in range(1, p, d) if has_order(x, d, p, fd))
    progression = 1 + d * np.arange((p - 1) // d, dtype=np.uint64)
    candidates = progression[mod_pow_array(progression, d, p) == 1]
    for q in fd.primes:
        if len(candidates) == 0:
            break
        candidates = candidates[mod_pow_array(candidates, d // q, p) != 1]
    return len(candidates)


def fixed_point_profile(p: int, pm1: Optional[Factorization] = None) -> FixedPointProfile:
    """
    F_d(p) for every d | p-1. A fixed point of order d is congruent to 1 mod
    d, so each order only needs its own arithmetic progression scanned.
    """
    if pm1 is None:
        pm1 = factorize(p - 1)
    counts: Dict[int, int] = {
        fd.n: _count_order_in_progression(p, fd) for fd in divisor_factorizations(pm1)
    }
    ord2 = multiplicative_order(2, p, pm1) if p > 2 else None
    return FixedPointProfile(
        p=p,
        pm1=pm1,
        counts=counts,
        total=sum(counts.values()),
        ord2=ord2,
        p_mod_8=p % 8,
    )


def g_count_formula(p: int, pm1: Optional[Factorization] = None) -> int:
    """
    Solutions of x^x = x (mod p) with 1 <= x <= (p-1)p, p not dividing x:
    (p-1) * sum over n | p-1 of phi(n)/n, accumulated term by term in integers.
    """
    if pm1 is None:
        pm1 = factorize(p - 1)
    return sum(euler_phi(fn) * ((p - 1) // fn.n) for fn in divisor_factorizations(pm1))


def g_count_bruteforce(p: int, budget: int = DEFAULT_ORACLE_BUDGET) -> int:
    limit = (p - 1) * p
    if limit > budget:
        raise OracleBudgetError(
            f"brute force over 1..{limit} for p={p} exceeds the oracle budget {budget}"
        )
    return sum(
        1 for x in range(1, limit + 1) if x % p and pow(x, x, p) == x % p
    )


def kth_residue_fixed_point(p: int, k: int, m: int) -> bool:
    """Does x = m(p-1)/k + 1 satisfy x^(x-1) = 1 (mod p)?"""
    if k < 1 or (p - 1) % k:
        raise ValueError(f"k={k} does not divide p-1={p - 1}")
    if not 1 <= m < k:
        raise ValueError(f"m must satisfy 1 <= m < k={k}, got {m}")
    x = m * (p - 1) // k + 1
    return pow(x, x - 1, p) == 1
