import random

import numpy as np
import pytest

from arith.factor import divisor_factorizations, euler_phi, factorize
from arith.modular import has_order, mod_pow, mod_pow_array, multiplicative_order


@pytest.mark.parametrize("args,expected", [((3, 3, 7), 6), ((4, 4, 7), 4), ((2, 0, 5), 1)])
def test_mod_pow(args, expected):
    assert mod_pow(*args) == expected


def test_mod_pow_rejects_small_modulus():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 1)


def test_mod_pow_wide_modulus_is_exact():
    p = (1 << 61) - 1
    assert mod_pow(3, p - 1, p) == 1


def test_mod_pow_array_matches_scalar():
    rng = random.Random(3)
    for modulus in (7, 1000003, 4294967291, (1 << 61) - 1):
        bases = [rng.randrange(0, modulus) for _ in range(50)]
        for exponent in (0, 1, 2, 12345, modulus - 1):
            dtype = object if modulus >= 1 << 32 else np.uint64
            got = mod_pow_array(np.array(bases, dtype=dtype), exponent, modulus)
            assert [int(v) for v in got] == [pow(b, exponent, modulus) for b in bases]


def test_fermat_on_random_samples():
    rng = random.Random(11)
    for p in (101, 10007, 1000003):
        for x in rng.sample(range(1, p), 20):
            assert mod_pow(x, p - 1, p) == 1


@pytest.mark.parametrize("x,expected", [(2, 3), (4, 3), (1, 1), (3, 6), (6, 2)])
def test_multiplicative_order_mod_7(x, expected):
    assert multiplicative_order(x, 7, factorize(6)) == expected


def test_multiplicative_order_rejects_zero():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


def test_has_order_examples():
    assert has_order(4, 3, 7, factorize(3))
    assert not has_order(6, 3, 7, factorize(3))
    assert has_order(1, 1, 101, factorize(1))


def test_order_counts_match_phi(small_primes):
    for p in small_primes[:200]:
        pm1 = factorize(p - 1)
        orders = [multiplicative_order(x, p, pm1) for x in range(1, p)]
        for fd in divisor_factorizations(pm1):
            assert orders.count(fd.n) == euler_phi(fd)
            assert sum(has_order(x, fd.n, p, fd) for x in range(1, p)) == euler_phi(fd)
        assert all((p - 1) % d == 0 for d in orders)
