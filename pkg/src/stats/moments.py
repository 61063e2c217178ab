import math
from fractions import Fraction

from arith.factor import divisor_factorizations, euler_phi
from data_models import Factorization, FixedPointProfile, ZRecord


def _exact_mean(pm1: Factorization) -> Fraction:
    return sum(
        (Fraction(euler_phi(fd), fd.n) for fd in divisor_factorizations(pm1)),
        Fraction(0),
    )


def _exact_variance(pm1: Factorization) -> Fraction:
    return sum(
        (
            Fraction(euler_phi(fd) * (fd.n - 1), fd.n * fd.n)
            for fd in divisor_factorizations(pm1)
        ),
        Fraction(0),
    )


def predicted_mean(pm1: Factorization) -> float:
    """Binomial-model mean of F(p): sum over d | p-1 of phi(d)/d."""
    return float(_exact_mean(pm1))


def predicted_variance(pm1: Factorization) -> float:
    """Binomial-model variance of F(p): sum over d | p-1 of phi(d)(d-1)/d^2."""
    return float(_exact_variance(pm1))


def z_statistic(profile: FixedPointProfile) -> ZRecord:
    mean = predicted_mean(profile.pm1)
    variance = predicted_variance(profile.pm1)
    if variance == 0:
        raise ValueError(f"predicted variance is 0 for p={profile.p}; z is undefined")
    return ZRecord(
        p=profile.p,
        f_total=profile.total,
        mean=mean,
        variance=variance,
        z=(profile.total - mean) / math.sqrt(variance),
    )
