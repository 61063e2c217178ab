from itertools import product
from math import gcd, prod
from typing import Dict, List

from arith.primes import is_prime, simple_sieve
from data_models import Factorization

_TRIAL_LIMIT = 1000
_SMALL_PRIMES = simple_sieve(_TRIAL_LIMIT).tolist()


def _brent_rho(n: int) -> int:
    """
    A non-trivial factor of the odd composite n, by Brent's variant of
    Pollard's rho. Deterministic: the polynomial constant c walks 1, 2, 3, ...
    until a proper factor appears.
    """
    for c in range(1, n):
        y, m = 2, 128
        g = r = q = 1
        x = ys = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ValueError(f"rho failed to split {n}")


def _split(n: int, into: Dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        into[n] = into.get(n, 0) + 1
        return
    g = _brent_rho(n)
    _split(g, into)
    _split(n // g, into)


def factorize(n: int) -> Factorization:
    """
    Complete factorization: trial division by the primes below 1000, then
    Brent-Pollard rho on what is left, every prime factor certified by
    is_prime.
    """
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    found: Dict[int, int] = {}
    rest = n
    for q in _SMALL_PRIMES:
        if q * q > rest:
            break
        while rest % q == 0:
            found[q] = found.get(q, 0) + 1
            rest //= q
    _split(rest, found)
    return Factorization(n=n, factors=sorted(found.items()))


def divisor_factorizations(f: Factorization) -> List[Factorization]:
    """Every divisor of f.n together with its factorization, ascending."""
    out = []
    for exponents in product(*(range(e + 1) for _, e in f.factors)):
        factors = [(q, k) for (q, _), k in zip(f.factors, exponents) if k > 0]
        out.append(
            Factorization.model_construct(
                n=prod(q**k for q, k in factors), factors=factors
            )
        )
    out.sort(key=lambda fd: fd.n)
    return out


def divisors(f: Factorization) -> List[int]:
    return [fd.n for fd in divisor_factorizations(f)]


def euler_phi(f: Factorization) -> int:
    return prod((q - 1) * q ** (e - 1) for q, e in f.factors)


def num_divisors(f: Factorization) -> int:
    """sigma_0(n)."""
    return prod(e + 1 for _, e in f.factors)
