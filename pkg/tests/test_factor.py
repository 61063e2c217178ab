import pytest
from pydantic import ValidationError

from arith.factor import divisor_factorizations, divisors, euler_phi, factorize, num_divisors
from data_models import Factorization


@pytest.mark.parametrize(
    "n,factors",
    [
        (12, [(2, 2), (3, 1)]),
        (100002, [(2, 1), (3, 1), (7, 1), (2381, 1)]),
        (1, []),
        (2**10, [(2, 10)]),
    ],
)
def test_factorize(n, factors):
    assert factorize(n).factors == factors


def test_factorize_needs_rho():
    # Two primes above the trial-division limit.
    assert factorize(1000003 * 1000033).factors == [(1000003, 1), (1000033, 1)]
    assert factorize(4294967291**2).factors == [(4294967291, 2)]


def test_factorization_rejects_bad_decomposition():
    with pytest.raises(ValidationError):
        Factorization(n=12, factors=[(3, 1), (2, 2)])
    with pytest.raises(ValidationError):
        Factorization(n=12, factors=[(4, 1), (3, 1)])
    with pytest.raises(ValidationError):
        Factorization(n=13, factors=[(2, 2), (3, 1)])


@pytest.mark.parametrize("n,expected", [(6, [1, 2, 3, 6]), (12, [1, 2, 3, 4, 6, 12]), (1, [1])])
def test_divisors(n, expected):
    assert divisors(factorize(n)) == expected


def test_divisor_factorizations_are_consistent():
    f = factorize(720720)
    fs = divisor_factorizations(f)
    assert len(fs) == num_divisors(f)
    for fd in fs:
        assert fd.factors == factorize(fd.n).factors


@pytest.mark.parametrize("n,phi", [(12, 4), (7, 6), (1, 1), (100, 40)])
def test_euler_phi(n, phi):
    assert euler_phi(factorize(n)) == phi


def test_phi_sums_to_n_over_divisors():
    for n in (1, 2, 12, 100002, 1006632):
        assert sum(euler_phi(fd) for fd in divisor_factorizations(factorize(n))) == n
